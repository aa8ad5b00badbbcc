#include "quiverks/quiver.hpp"

#include <set>

namespace qks {

Quiver Quiver::make(std::vector<std::string> vertices,
                    const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
  QuiverSpec spec;
  spec.vertices = std::move(vertices);
  for (const auto& [id, s, t] : arrows) spec.arrows.push_back({id, s, t});
  return validate(spec);
}

std::size_t Quiver::add_vertex(std::string id) {
  if (vertex_index(id) || arrow_index(id)) throw Error(Errc::DuplicateId, "duplicate id '" + id + "'");
  vertices_.push_back(std::move(id));
  return vertices_.size() - 1;
}

std::size_t Quiver::add_arrow(std::string id, std::size_t source, std::size_t target) {
  if (vertex_index(id) || arrow_index(id)) throw Error(Errc::DuplicateId, "duplicate id '" + id + "'");
  if (source >= vertices_.size() || target >= vertices_.size())
    throw Error(Errc::DanglingArrow, "arrow '" + id + "' has an endpoint outside the vertex set");
  arrows_.push_back({std::move(id), source, target});
  return arrows_.size() - 1;
}

std::optional<std::size_t> Quiver::vertex_index(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Quiver::arrow_index(const std::string& id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].id == id) return i;
  return std::nullopt;
}

Quiver validate(const QuiverSpec& spec) {
  if (spec.vertices.empty()) throw Error(Errc::EmptyQuiver, "a quiver needs at least one vertex");
  Quiver q;
  for (const auto& v : spec.vertices) q.add_vertex(v);
  for (const auto& a : spec.arrows) {
    auto s = q.vertex_index(a.source);
    auto t = q.vertex_index(a.target);
    if (!s) throw Error(Errc::DanglingArrow, "arrow '" + a.id + "' has unknown source '" + a.source + "'");
    if (!t) throw Error(Errc::DanglingArrow, "arrow '" + a.id + "' has unknown target '" + a.target + "'");
    q.add_arrow(a.id, *s, *t);
  }
  return q;
}

void check_path(const Quiver& q, const Path& p) {
  if (p.start >= q.vertex_count()) throw Error(Errc::InvalidPath, "path starts outside the vertex set");
  std::size_t at = p.start;
  for (std::size_t a : p.arrows) {
    if (a >= q.arrow_count()) throw Error(Errc::InvalidPath, "path uses an unknown arrow");
    if (q.arrow(a).source != at)
      throw Error(Errc::InvalidPath, "arrow '" + q.arrow(a).id + "' does not continue the path");
    at = q.arrow(a).target;
  }
}

Path concat(const Quiver& q, const Path& first, const Path& second) {
  if (first.target(q) != second.start) throw Error(Errc::InvalidPath, "paths do not concatenate");
  Path out = first;
  out.arrows.insert(out.arrows.end(), second.arrows.begin(), second.arrows.end());
  return out;
}

void check_relations_wellformed(const Quiver& q, const PathRelations& rels) {
  for (const auto& r : rels) {
    check_path(q, r.lhs);
    check_path(q, r.rhs);
    if (r.lhs.source() != r.rhs.source() || r.lhs.target(q) != r.rhs.target(q))
      throw Error(Errc::InvalidPath, "related paths must share source and target");
  }
}

PathRelatedQuiver category_to_quiver(const FiniteCategory& cat) {
  auto incoherent = [](const std::string& msg) { return Error(Errc::IncoherentTable, msg); };

  std::map<std::string, const FiniteCategory::Morphism*> by_id;
  std::map<std::string, std::string> identity_of;
  std::set<std::string> objects(cat.objects.begin(), cat.objects.end());
  if (objects.size() != cat.objects.size()) throw incoherent("duplicate object");
  for (const auto& m : cat.morphisms) {
    if (!by_id.emplace(m.id, &m).second) throw incoherent("duplicate morphism '" + m.id + "'");
    if (!objects.count(m.source) || !objects.count(m.target))
      throw incoherent("morphism '" + m.id + "' has an unknown endpoint");
    if (m.identity) {
      if (m.source != m.target) throw incoherent("identity '" + m.id + "' is not an endomorphism");
      if (!identity_of.emplace(m.source, m.id).second)
        throw incoherent("object '" + m.source + "' has two identities");
    }
  }
  for (const auto& o : cat.objects)
    if (!identity_of.count(o)) throw incoherent("object '" + o + "' has no identity");

  auto lookup = [&](const std::string& g, const std::string& f) -> const FiniteCategory::Morphism& {
    auto it = cat.compose.find({g, f});
    if (it == cat.compose.end()) throw incoherent("missing composite " + g + " o " + f);
    auto m = by_id.find(it->second);
    if (m == by_id.end()) throw incoherent("composite " + g + " o " + f + " is not a morphism");
    return *m->second;
  };

  for (const auto& [key, h] : cat.compose) {
    auto g = by_id.find(key.first);
    auto f = by_id.find(key.second);
    if (g == by_id.end() || f == by_id.end()) throw incoherent("table entry names an unknown morphism");
    if (f->second->target != g->second->source) throw incoherent("table entry for a non-composable pair");
  }

  for (const auto& f : cat.morphisms) {
    for (const auto& g : cat.morphisms) {
      if (f.target != g.source) continue;
      const auto& h = lookup(g.id, f.id);
      if (h.source != f.source || h.target != g.target)
        throw incoherent("composite " + g.id + " o " + f.id + " has the wrong endpoints");
      if (g.identity && h.id != f.id) throw incoherent("identity '" + g.id + "' does not absorb '" + f.id + "'");
      if (f.identity && h.id != g.id) throw incoherent("identity '" + f.id + "' does not absorb '" + g.id + "'");
    }
  }
  for (const auto& f : cat.morphisms)
    for (const auto& g : cat.morphisms) {
      if (f.target != g.source) continue;
      const auto& gf = lookup(g.id, f.id);
      for (const auto& h : cat.morphisms) {
        if (g.target != h.source) continue;
        const auto& hg = lookup(h.id, g.id);
        if (lookup(hg.id, f.id).id != lookup(h.id, gf.id).id)
          throw incoherent("composition is not associative at " + h.id + ", " + g.id + ", " + f.id);
      }
    }

  PathRelatedQuiver out;
  for (const auto& o : cat.objects) out.quiver.add_vertex(o);
  for (const auto& m : cat.morphisms) {
    std::size_t s = *out.quiver.vertex_index(m.source);
    if (m.identity) {
      out.morphism_paths[m.id] = Path::trivial(s);
    } else {
      std::size_t a = out.quiver.add_arrow(m.id, s, *out.quiver.vertex_index(m.target));
      out.morphism_paths[m.id] = Path{s, {a}};
    }
  }
  for (const auto& [key, h] : cat.compose) {
    const auto& g = *by_id.at(key.first);
    const auto& f = *by_id.at(key.second);
    if (g.identity || f.identity) continue;
    Path lhs = concat(out.quiver, out.morphism_paths.at(f.id), out.morphism_paths.at(g.id));
    out.relations.push_back({std::move(lhs), out.morphism_paths.at(h)});
  }
  return out;
}

SubQuiver full_subquiver(const Quiver& q, const PathRelations& rels, const std::vector<std::size_t>& keep_vertices) {
  SubQuiver out;
  std::vector<std::optional<std::size_t>> vnew(q.vertex_count());
  for (std::size_t v : keep_vertices) {
    if (v >= q.vertex_count()) throw Error(Errc::InvalidArgument, "vertex index out of range");
    if (vnew[v]) continue;
    vnew[v] = out.quiver.add_vertex(q.vertices()[v]);
    out.vertex_map.push_back(v);
  }
  std::vector<std::optional<std::size_t>> anew(q.arrow_count());
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    if (!vnew[arr.source] || !vnew[arr.target]) continue;
    anew[a] = out.quiver.add_arrow(arr.id, *vnew[arr.source], *vnew[arr.target]);
    out.arrow_map.push_back(a);
  }
  auto translate = [&](const Path& p) -> std::optional<Path> {
    if (!vnew[p.start]) return std::nullopt;
    Path r{*vnew[p.start], {}};
    for (std::size_t a : p.arrows) {
      if (!anew[a]) return std::nullopt;
      r.arrows.push_back(*anew[a]);
    }
    return r;
  };
  for (const auto& rel : rels) {
    auto l = translate(rel.lhs);
    auto r = translate(rel.rhs);
    if (l && r) out.relations.push_back({std::move(*l), std::move(*r)});
  }
  return out;
}

}  // namespace qks
