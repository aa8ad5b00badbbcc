#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiverks/algebra.hpp"
#include "quiverks/rep.hpp"

namespace qks {

template <ExactField K>
struct IsoWitness {
  Morphism<K> forward;
  Morphism<K> inverse;
};

template <ExactField K>
struct SummandWitness {
  Morphism<K> inclusion;
  Morphism<K> projection;
};

template <ExactField K>
struct DecompositionSummand {
  Representation<K> rep;
  std::size_t multiplicity = 0;
  /// One (inclusion, projection) pair per copy, each against `rep`.
  std::vector<SummandWitness<K>> witnesses;
};

template <ExactField K>
struct Decomposition {
  Representation<K> original;
  std::vector<DecompositionSummand<K>> summands;
  Certainty certainty = Certainty::Proven;

  std::size_t total_copies() const {
    std::size_t n = 0;
    for (const auto& s : summands) n += s.multiplicity;
    return n;
  }
};

namespace detail {

template <ExactField K>
bool summand_less(const Representation<K>& a, const Representation<K>& b) {
  if (a.dims != b.dims) return a.dims < b.dims;
  return canonical_bytes(a) < canonical_bytes(b);
}

template <ExactField K>
IsoWitness<K> checked_witness(const Representation<K>& a, const Representation<K>& b, Morphism<K> fwd, Morphism<K> inv) {
  ensure(is_morphism(a, b, fwd) && is_morphism(b, a, inv), "isomorphism witness is not a morphism");
  ensure(compose(inv, fwd) == identity_morphism(a) && compose(fwd, inv) == identity_morphism(b),
         "isomorphism witness does not invert");
  return {std::move(fwd), std::move(inv)};
}

}  // namespace detail

/// Isomorphism test for representations whose endomorphism rings are local.
/// Non-isomorphisms between such objects compose into the radical, so they
/// are isomorphic iff some product g_i f_j of Hom basis elements is
/// invertible; the witness is f_j with inverse (g_i f_j)^{-1} g_i.
template <ExactField K>
std::optional<IsoWitness<K>> isomorphic_indecomposables(const Representation<K>& a, const Representation<K>& b) {
  require_same_context(a, b);
  if (a.dims != b.dims) return std::nullopt;
  if (a == b) return IsoWitness<K>{identity_morphism(a), identity_morphism(a)};
  auto ab = hom_space(a, b);
  if (ab.dimension() == 0) return std::nullopt;
  auto ba = hom_space(b, a);
  for (const auto& g : ba.basis)
    for (const auto& f : ab.basis) {
      auto gf = compose(g, f);
      if (!is_isomorphism(gf)) continue;
      return detail::checked_witness(a, b, f, compose(inverse_morphism(gf), g));
    }
  return std::nullopt;
}

/// Krull-Schmidt decomposition: primitive idempotents of End(rho) are split
/// off, the pieces are ordered by dimension vector and then by serialized
/// maps, and isomorphic pieces are grouped. If relations are given they are
/// checked on the input (RelationViolation) and asserted on every summand.
template <ExactField K>
Decomposition<K> krull_schmidt(const Representation<K>& rho, Rng& rng, const PathRelations& relations = {},
                               bool require_certified = false) {
  if (!relations.empty() && !check_relations(rho, relations))
    throw Error(Errc::RelationViolation, "input representation violates its path relations");
  Decomposition<K> out{rho, {}, Certainty::Proven};
  if (rho.is_zero_object()) return out;

  auto A = end_algebra(rho);
  auto prim = primitive_idempotents(A, rng, require_certified);
  out.certainty = prim.certainty;

  std::vector<Summand<K>> pieces;
  for (const auto& e : prim.idempotents) pieces.push_back(split_idempotent(rho, to_morphism(A, e)));
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Summand<K>& x, const Summand<K>& y) { return detail::summand_less(x.rep, y.rep); });

  for (auto& piece : pieces) {
    if (!relations.empty()) ensure(check_relations(piece.rep, relations), "summand lost a path relation");
    bool grouped = false;
    for (auto& group : out.summands) {
      auto w = isomorphic_indecomposables(group.rep, piece.rep);
      if (!w) continue;
      // Transport the piece's witnesses onto the group representative.
      group.witnesses.push_back({compose(piece.inclusion, w->forward), compose(w->inverse, piece.projection)});
      ++group.multiplicity;
      grouped = true;
      break;
    }
    if (!grouped) out.summands.push_back({piece.rep, 1, {{piece.inclusion, piece.projection}}});
  }

  auto total = zero_morphism(rho, rho);
  for (const auto& s : out.summands)
    for (const auto& w : s.witnesses) {
      ensure(compose(w.projection, w.inclusion) == identity_morphism(s.rep), "p o i is not the identity");
      total = add(total, compose(w.inclusion, w.projection));
    }
  ensure(total == identity_morphism(rho), "summand idempotents do not sum to the identity");
  return out;
}

/// Direct sum of all summands with multiplicity, in decomposition order.
template <ExactField K>
Representation<K> reassemble(const Decomposition<K>& d) {
  auto acc = Representation<K>::zero_maps(d.original.field, d.original.quiver, d.original.realization,
                                          std::vector<std::size_t>(d.original.dims.size(), 0));
  for (const auto& s : d.summands)
    for (std::size_t c = 0; c < s.multiplicity; ++c) acc = direct_sum(acc, s.rep).sum;
  return acc;
}

/// Isomorphism from reassemble(d) to d.original: the row of inclusions.
template <ExactField K>
IsoWitness<K> reassembly_witness(const Decomposition<K>& d) {
  const auto& rho = d.original;
  auto sum = reassemble(d);
  IsoWitness<K> w{zero_morphism(sum, rho), zero_morphism(rho, sum)};
  std::vector<std::size_t> offset(rho.dims.size(), 0);
  for (const auto& s : d.summands)
    for (const auto& pair : s.witnesses) {
      for (std::size_t v = 0; v < rho.dims.size(); ++v) {
        w.forward.components[v].set_block(0, offset[v], pair.inclusion.components[v]);
        w.inverse.components[v].set_block(offset[v], 0, pair.projection.components[v]);
        offset[v] += s.rep.dims[v];
      }
    }
  return detail::checked_witness(sum, rho, std::move(w.forward), std::move(w.inverse));
}

namespace detail {

/// Matches summands of two decompositions with the same dimension vector
/// (pairwise non-isomorphic within each list, so greedy matching is exact).
template <ExactField K>
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> match_summands(
    const Decomposition<K>& d1, const Decomposition<K>& d2, std::vector<IsoWitness<K>>* witnesses,
    std::string* report) {
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::vector<bool> used(d2.summands.size(), false);
  for (std::size_t i = 0; i < d1.summands.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < d2.summands.size() && !found; ++j) {
      if (used[j] || d1.summands[i].multiplicity != d2.summands[j].multiplicity) continue;
      auto w = isomorphic_indecomposables(d1.summands[i].rep, d2.summands[j].rep);
      if (!w) continue;
      used[j] = true;
      matching.emplace_back(i, j);
      if (witnesses) witnesses->push_back(std::move(*w));
      found = true;
    }
    if (!found) {
      if (report) *report = "summand " + std::to_string(i) + " has no isomorphic partner with equal multiplicity";
      return std::nullopt;
    }
  }
  if (matching.size() != d2.summands.size()) {
    if (report) *report = "second decomposition has unmatched summands";
    return std::nullopt;
  }
  return matching;
}

}  // namespace detail

/// General isomorphism test. Cheap exits first (different dimension
/// vectors, equality), then both sides are decomposed and their summand
/// multisets matched; the witness is assembled copy by copy.
template <ExactField K>
std::optional<IsoWitness<K>> is_isomorphic(const Representation<K>& a, const Representation<K>& b, Rng& rng) {
  require_same_context(a, b);
  if (a.dims != b.dims) return std::nullopt;
  if (a == b) return IsoWitness<K>{identity_morphism(a), identity_morphism(a)};
  auto da = krull_schmidt(a, rng);
  auto db = krull_schmidt(b, rng);
  std::vector<IsoWitness<K>> pieces;
  auto matching = detail::match_summands(da, db, &pieces, nullptr);
  if (!matching) return std::nullopt;
  auto fwd = zero_morphism(a, b);
  auto inv = zero_morphism(b, a);
  for (std::size_t m = 0; m < matching->size(); ++m) {
    const auto& sa = da.summands[(*matching)[m].first];
    const auto& sb = db.summands[(*matching)[m].second];
    for (std::size_t c = 0; c < sa.multiplicity; ++c) {
      // a -> piece of a -> piece of b -> b
      fwd = add(fwd, compose(sb.witnesses[c].inclusion, compose(pieces[m].forward, sa.witnesses[c].projection)));
      inv = add(inv, compose(sa.witnesses[c].inclusion, compose(pieces[m].inverse, sb.witnesses[c].projection)));
    }
  }
  return detail::checked_witness(a, b, std::move(fwd), std::move(inv));
}

template <ExactField K>
struct UniquenessReport {
  bool matched = false;
  /// (index in first, index in second) per summand.
  std::vector<std::pair<std::size_t, std::size_t>> matching;
  std::vector<IsoWitness<K>> witnesses;
  std::string mismatch;
};

/// Bijection between the summand lists with equal multiplicities and
/// pairwise isomorphism witnesses. Throws PreconditionViolation when the
/// decompositions are of different originals.
template <ExactField K>
UniquenessReport<K> verify_uniqueness(const Decomposition<K>& d1, const Decomposition<K>& d2) {
  if (!(d1.original == d2.original))
    throw Error(Errc::PreconditionViolation, "decompositions belong to different representations");
  UniquenessReport<K> out;
  auto m = detail::match_summands(d1, d2, &out.witnesses, &out.mismatch);
  if (m) {
    out.matched = true;
    out.matching = std::move(*m);
  } else {
    out.witnesses.clear();
  }
  return out;
}

template <ExactField K>
struct CancellationVerdict {
  /// rho (+) rho' is isomorphic to rho (+) rho''.
  bool hypothesis = false;
  /// rho' is isomorphic to rho''.
  bool conclusion = false;
  std::optional<IsoWitness<K>> witness;

  bool consistent() const noexcept { return !hypothesis || conclusion; }
};

/// Checks X (+) Y = X (+) Z  =>  Y = Z on one instance.
template <ExactField K>
CancellationVerdict<K> cancellation_check(const Representation<K>& x, const Representation<K>& y,
                                          const Representation<K>& z, Rng& rng) {
  require_same_context(x, y);
  require_same_context(x, z);
  CancellationVerdict<K> out;
  out.hypothesis = is_isomorphic(direct_sum(x, y).sum, direct_sum(x, z).sum, rng).has_value();
  out.witness = is_isomorphic(y, z, rng);
  out.conclusion = out.witness.has_value();
  return out;
}

}  // namespace qks
