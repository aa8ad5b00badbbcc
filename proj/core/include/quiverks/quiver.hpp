#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "quiverks/error.hpp"

namespace qks {

struct Arrow {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph; loops and parallel arrows are allowed.
/// Vertices and arrows keep their insertion order, which fixes every
/// dimension-vector and serialization order downstream.
class Quiver {
 public:
  Quiver() = default;

  /// Builds and validates; arrow endpoints are given by vertex id.
  static Quiver make(std::vector<std::string> vertices,
                     const std::vector<std::tuple<std::string, std::string, std::string>>& arrows);

  std::size_t add_vertex(std::string id);
  std::size_t add_arrow(std::string id, std::size_t source, std::size_t target);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }

  std::optional<std::size_t> vertex_index(const std::string& id) const;
  std::optional<std::size_t> arrow_index(const std::string& id) const;

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// Unvalidated description used by `validate`, mirroring an input document.
struct QuiverSpec {
  std::vector<std::string> vertices;
  struct ArrowSpec {
    std::string id;
    std::string source;
    std::string target;
  };
  std::vector<ArrowSpec> arrows;
};

/// Checks ids are unique and every arrow endpoint names a vertex; throws
/// DuplicateId, DanglingArrow or EmptyQuiver. Returns the built quiver.
Quiver validate(const QuiverSpec& spec);

/// Tensor twist of one arrow: S_a(X) = X (x) F^s, T_a(X) = X (x) F^t.
struct Twist {
  std::size_t s = 1;
  std::size_t t = 1;

  friend bool operator==(const Twist&, const Twist&) = default;
};

/// One twist per arrow, in arrow order.
struct Realization {
  std::vector<Twist> twists;

  static Realization trivial(const Quiver& q) { return {std::vector<Twist>(q.arrow_count())}; }

  bool is_trivial() const {
    for (const auto& tw : twists)
      if (tw.s != 1 || tw.t != 1) return false;
    return true;
  }

  friend bool operator==(const Realization&, const Realization&) = default;
};

/// Path as a start vertex plus arrows in traversal order. An empty arrow
/// list is the trivial path at `start`.
struct Path {
  std::size_t start = 0;
  std::vector<std::size_t> arrows;

  static Path trivial(std::size_t v) { return {v, {}}; }

  std::size_t source() const noexcept { return start; }
  std::size_t target(const Quiver& q) const { return arrows.empty() ? start : q.arrow(arrows.back()).target; }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Throws InvalidPath unless consecutive arrows compose.
void check_path(const Quiver& q, const Path& p);

Path concat(const Quiver& q, const Path& first, const Path& second);

struct PathRelation {
  Path lhs;
  Path rhs;

  friend bool operator==(const PathRelation&, const PathRelation&) = default;
};

using PathRelations = std::vector<PathRelation>;

/// Throws InvalidPath when a relation's paths are malformed or do not share
/// source and target.
void check_relations_wellformed(const Quiver& q, const PathRelations& rels);

/// Finite category given by its composition table.
struct FiniteCategory {
  struct Morphism {
    std::string id;
    std::string source;
    std::string target;
    bool identity = false;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  /// (g, f) -> g o f for every composable pair (target f = source g).
  std::map<std::pair<std::string, std::string>, std::string> compose;
};

struct PathRelatedQuiver {
  Quiver quiver;
  PathRelations relations;
  /// Morphism id -> path that represents it (identities map to trivial paths).
  std::map<std::string, Path> morphism_paths;
};

/// One vertex per object, one arrow per non-identity morphism and one
/// relation per table entry g o f = h with f, g both non-identity. Entries
/// involving identities are checked for absorption but emit nothing.
/// Throws IncoherentTable on missing entries, bad identities or a
/// non-associative table.
PathRelatedQuiver category_to_quiver(const FiniteCategory& cat);

/// Full sub-quiver on a vertex subset: keeps arrows with both endpoints in
/// the subset and relations whose paths use only kept arrows. Returns the new
/// quiver and, for bookkeeping, the old indices of kept vertices and arrows.
struct SubQuiver {
  Quiver quiver;
  PathRelations relations;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> arrow_map;
};

SubQuiver full_subquiver(const Quiver& q, const PathRelations& rels, const std::vector<std::size_t>& keep_vertices);

}  // namespace qks
