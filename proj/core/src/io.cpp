#include "quiverks/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qks {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error(Errc::SchemaError, path + ": " + what);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
               std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  for (auto key : required)
    if (!j.contains(std::string(key))) schema_fail(path, "missing key '" + std::string(key) + "'");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || k == key;
    for (auto k : optional) known = known || k == key;
    if (!known) schema_fail(path + "." + key, "unknown key");
  }
}

const std::string& get_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

/// Non-negative integer written as a decimal string.
std::uint64_t get_count(const json& j, const std::string& path) {
  const auto& s = get_string(j, path);
  if (s.empty() || s.size() > 18) schema_fail(path, "expected a non-negative decimal integer string");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') schema_fail(path, "expected a non-negative decimal integer string");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (std::to_string(v) != s) schema_fail(path, "integer string must not have leading zeros");
  return v;
}

template <ExactField K>
Matrix<K> parse_matrix(const K& field, const json& j, const std::string& path, std::size_t rows, std::size_t cols,
                       const std::string& shape_owner) {
  if (!j.is_array()) schema_fail(path, "expected a row-major array of rows");
  auto shape_error = [&](std::size_t r, std::size_t c) {
    throw Error(Errc::ShapeError, shape_owner + " expects a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                      " matrix, got " + std::to_string(r) + " rows" +
                                      (c == static_cast<std::size_t>(-1) ? std::string() : " of length " + std::to_string(c)));
  };
  if (j.size() != rows) shape_error(j.size(), static_cast<std::size_t>(-1));
  Matrix<K> m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    std::string rpath = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) schema_fail(rpath, "expected an array of scalars");
    if (row.size() != cols) shape_error(rows, row.size());
    for (std::size_t c = 0; c < cols; ++c) {
      std::string cpath = rpath + "[" + std::to_string(c) + "]";
      const auto& s = get_string(row[c], cpath);
      try {
        m(i, c) = field.parse(s);
      } catch (const Error& e) {
        schema_fail(cpath, e.what());
      }
    }
  }
  return m;
}

template <ExactField K>
json matrix_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.field().to_string(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json field_json(const FieldSpec& f) {
  if (f.kind == FieldKind::Rationals) return json{{"kind", "rationals"}};
  return json{{"kind", "prime"}, {"p", std::to_string(f.modulus)}};
}

Path parse_path(const Quiver& q, const json& j, const std::string& path) {
  only_keys(j, path, {"start", "arrows"});
  auto v = q.vertex_index(get_string(j["start"], path + ".start"));
  if (!v) schema_fail(path + ".start", "unknown vertex");
  Path p{*v, {}};
  if (!j["arrows"].is_array()) schema_fail(path + ".arrows", "expected an array of arrow ids");
  for (std::size_t i = 0; i < j["arrows"].size(); ++i) {
    std::string apath = path + ".arrows[" + std::to_string(i) + "]";
    auto a = q.arrow_index(get_string(j["arrows"][i], apath));
    if (!a) schema_fail(apath, "unknown arrow");
    p.arrows.push_back(*a);
  }
  return p;
}

json path_json(const Quiver& q, const Path& p) {
  json arrows = json::array();
  for (auto a : p.arrows) arrows.push_back(q.arrow(a).id);
  return json{{"start", q.vertices()[p.start]}, {"arrows", std::move(arrows)}};
}

template <ExactField K>
DocumentBody parse_representation(const K& field, const json& j, Document& doc) {
  const auto& jq = j["quiver"];
  only_keys(jq, "$.quiver", {"vertices", "arrows"});
  QuiverSpec spec;
  if (!jq["vertices"].is_array()) schema_fail("$.quiver.vertices", "expected an array of ids");
  for (std::size_t i = 0; i < jq["vertices"].size(); ++i)
    spec.vertices.push_back(get_string(jq["vertices"][i], "$.quiver.vertices[" + std::to_string(i) + "]"));
  if (!jq["arrows"].is_array()) schema_fail("$.quiver.arrows", "expected an array of arrows");
  for (std::size_t i = 0; i < jq["arrows"].size(); ++i) {
    std::string apath = "$.quiver.arrows[" + std::to_string(i) + "]";
    const auto& ja = jq["arrows"][i];
    only_keys(ja, apath, {"id", "source", "target"});
    spec.arrows.push_back({get_string(ja["id"], apath + ".id"), get_string(ja["source"], apath + ".source"),
                           get_string(ja["target"], apath + ".target")});
  }
  Quiver q = validate(spec);

  Realization real = Realization::trivial(q);
  if (j.contains("realization")) {
    doc.has_realization = true;
    const auto& jr = j["realization"];
    if (!jr.is_object()) schema_fail("$.realization", "expected an object keyed by arrow id");
    for (const auto& [key, val] : jr.items()) {
      auto a = q.arrow_index(key);
      if (!a) schema_fail("$.realization." + key, "unknown arrow");
      only_keys(val, "$.realization." + key, {"s", "t"});
      auto s = get_count(val["s"], "$.realization." + key + ".s");
      auto t = get_count(val["t"], "$.realization." + key + ".t");
      if (s == 0 || t == 0) schema_fail("$.realization." + key, "twist multiplicities must be positive");
      real.twists[*a] = Twist{s, t};
    }
    if (jr.size() != q.arrow_count()) schema_fail("$.realization", "every arrow needs a twist entry");
  }

  std::vector<std::size_t> dims(q.vertex_count());
  const auto& jd = j["dims"];
  if (!jd.is_object()) schema_fail("$.dims", "expected an object keyed by vertex id");
  for (const auto& [key, val] : jd.items()) {
    auto v = q.vertex_index(key);
    if (!v) schema_fail("$.dims." + key, "unknown vertex");
    dims[*v] = get_count(val, "$.dims." + key);
  }
  if (jd.size() != q.vertex_count()) schema_fail("$.dims", "every vertex needs a dimension");

  const auto& jm = j["maps"];
  if (!jm.is_object()) schema_fail("$.maps", "expected an object keyed by arrow id");
  for (const auto& [key, _] : jm.items())
    if (!q.arrow_index(key)) schema_fail("$.maps." + key, "unknown arrow");
  std::vector<Matrix<K>> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    if (!jm.contains(arr.id)) schema_fail("$.maps", "missing map for arrow '" + arr.id + "'");
    std::size_t rows = real.twists[a].t * dims[arr.target];
    std::size_t cols = real.twists[a].s * dims[arr.source];
    maps.push_back(parse_matrix(field, jm[arr.id], "$.maps." + arr.id, rows, cols, "arrow '" + arr.id + "'"));
  }

  if (j.contains("relations")) {
    const auto& jrel = j["relations"];
    if (!jrel.is_array()) schema_fail("$.relations", "expected an array");
    PathRelations rels;
    for (std::size_t i = 0; i < jrel.size(); ++i) {
      std::string rpath = "$.relations[" + std::to_string(i) + "]";
      only_keys(jrel[i], rpath, {"lhs", "rhs"});
      rels.push_back({parse_path(q, jrel[i]["lhs"], rpath + ".lhs"), parse_path(q, jrel[i]["rhs"], rpath + ".rhs")});
    }
    check_relations_wellformed(q, rels);
    doc.relations = std::move(rels);
  }
  return Representation<K>::make(field, std::move(q), std::move(real), std::move(dims), std::move(maps));
}

template <ExactField K>
DocumentBody parse_pairing(const K& field, const json& j) {
  const auto& jp = j["pairing"];
  only_keys(jp, "$.pairing", {"dim_a", "dim_b", "dim_m", "grams"});
  auto da = get_count(jp["dim_a"], "$.pairing.dim_a");
  auto db = get_count(jp["dim_b"], "$.pairing.dim_b");
  auto dm = get_count(jp["dim_m"], "$.pairing.dim_m");
  if (!jp["grams"].is_array()) schema_fail("$.pairing.grams", "expected an array of matrices");
  if (jp["grams"].size() != dm)
    throw Error(Errc::ShapeError, "pairing expects " + std::to_string(dm) + " Gram matrices, got " +
                                      std::to_string(jp["grams"].size()));
  std::vector<Matrix<K>> grams;
  for (std::size_t k = 0; k < dm; ++k)
    grams.push_back(parse_matrix(field, jp["grams"][k], "$.pairing.grams[" + std::to_string(k) + "]", da, db,
                                 "Gram matrix " + std::to_string(k)));
  return Pairing<K>::make(field, da, db, dm, std::move(grams));
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, location(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
  }
}

template <ExactField K>
json representation_json(const Representation<K>& r, const Document& doc) {
  const Quiver& q = r.quiver;
  json arrows = json::array();
  for (const auto& a : q.arrows())
    arrows.push_back(json{{"id", a.id}, {"source", q.vertices()[a.source]}, {"target", q.vertices()[a.target]}});
  json dims = json::object();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[q.vertices()[v]] = std::to_string(r.dims[v]);
  json maps = json::object();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).id] = matrix_json(r.maps[a]);
  json out{{"field", field_json(r.field.spec())},
           {"quiver", json{{"vertices", q.vertices()}, {"arrows", std::move(arrows)}}},
           {"dims", std::move(dims)},
           {"maps", std::move(maps)}};
  if (doc.has_realization) {
    json real = json::object();
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      real[q.arrow(a).id] =
          json{{"s", std::to_string(r.realization.twists[a].s)}, {"t", std::to_string(r.realization.twists[a].t)}};
    out["realization"] = std::move(real);
  }
  if (doc.relations) {
    json rels = json::array();
    for (const auto& rel : *doc.relations) rels.push_back(json{{"lhs", path_json(q, rel.lhs)}, {"rhs", path_json(q, rel.rhs)}});
    out["relations"] = std::move(rels);
  }
  return out;
}

template <ExactField K>
json pairing_json(const Pairing<K>& w) {
  json grams = json::array();
  for (const auto& g : w.grams) grams.push_back(matrix_json(g));
  return json{{"field", field_json(w.field.spec())},
              {"pairing", json{{"dim_a", std::to_string(w.dim_a)},
                               {"dim_b", std::to_string(w.dim_b)},
                               {"dim_m", std::to_string(w.dim_m)},
                               {"grams", std::move(grams)}}}};
}

}  // namespace

FieldSpec Document::field() const {
  return std::visit([](const auto& b) { return b.field.spec(); }, body);
}

Document parse_document(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object()) schema_fail("$", "expected an object");
  bool pairing = j.contains("pairing");
  if (pairing)
    only_keys(j, "$", {"schema_version", "field", "pairing"});
  else
    only_keys(j, "$", {"schema_version", "field", "quiver", "dims", "maps"}, {"realization", "relations"});
  const auto& version = get_string(j["schema_version"], "$.schema_version");
  if (version != kSchemaVersion) schema_fail("$.schema_version", "unsupported version '" + version + "'");
  Document doc{version, Representation<PrimeField>{PrimeField(2), {}, {}, {}, {}}, false, std::nullopt};

  const auto& jf = j["field"];
  if (!jf.is_object() || !jf.contains("kind")) schema_fail("$.field", "expected {\"kind\": ...}");
  const auto& kind = get_string(jf["kind"], "$.field.kind");
  if (kind == "prime") {
    only_keys(jf, "$.field", {"kind", "p"});
    auto p = get_count(jf["p"], "$.field.p");
    PrimeField field(p);
    doc.body = pairing ? parse_pairing(field, j) : parse_representation(field, j, doc);
  } else if (kind == "rationals") {
    only_keys(jf, "$.field", {"kind"});
    RationalField field;
    doc.body = pairing ? parse_pairing(field, j) : parse_representation(field, j, doc);
  } else {
    schema_fail("$.field.kind", "expected \"prime\" or \"rationals\"");
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  json j = std::visit(
      [&](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Pairing<PrimeField>> || std::is_same_v<T, Pairing<RationalField>>)
          return pairing_json(b);
        else
          return representation_json(b, doc);
      },
      doc.body);
  j["schema_version"] = doc.schema_version;
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document read_document_file(const std::string& path) { return parse_document(read_text_file(path)); }

template <ExactField K>
Morphism<K> parse_morphism(std::string_view text, const Representation<K>& rep) {
  json j = parse_json(text);
  only_keys(j, "$", {"schema_version", "components"});
  if (get_string(j["schema_version"], "$.schema_version") != kSchemaVersion)
    schema_fail("$.schema_version", "unsupported version");
  const auto& jc = j["components"];
  if (!jc.is_object()) schema_fail("$.components", "expected an object keyed by vertex id");
  for (const auto& [key, _] : jc.items())
    if (!rep.quiver.vertex_index(key)) schema_fail("$.components." + key, "unknown vertex");
  Morphism<K> m;
  for (std::size_t v = 0; v < rep.quiver.vertex_count(); ++v) {
    const auto& id = rep.quiver.vertices()[v];
    if (!jc.contains(id)) schema_fail("$.components", "missing component for vertex '" + id + "'");
    m.components.push_back(
        parse_matrix(rep.field, jc[id], "$.components." + id, rep.dims[v], rep.dims[v], "vertex '" + id + "'"));
  }
  return m;
}

template <ExactField K>
std::string serialize_morphism(const Morphism<K>& m, const Representation<K>& rep) {
  json comps = json::object();
  for (std::size_t v = 0; v < m.components.size(); ++v) comps[rep.quiver.vertices()[v]] = matrix_json(m.components[v]);
  return json{{"components", std::move(comps)}, {"schema_version", kSchemaVersion}}.dump();
}

template Morphism<PrimeField> parse_morphism(std::string_view, const Representation<PrimeField>&);
template Morphism<RationalField> parse_morphism(std::string_view, const Representation<RationalField>&);
template std::string serialize_morphism(const Morphism<PrimeField>&, const Representation<PrimeField>&);
template std::string serialize_morphism(const Morphism<RationalField>&, const Representation<RationalField>&);

}  // namespace qks
