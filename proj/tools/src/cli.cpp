#include "quiverks_cli/cli.hpp"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quiverks/decompose.hpp"
#include "quiverks/fitting.hpp"
#include "quiverks/io.hpp"
#include "quiverks/pairing.hpp"
#include "quiverks_cli/harness.hpp"

namespace qks::cli {

namespace {

using json = nlohmann::json;

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

template <ExactField K>
json morphism_json(const Representation<K>& r, const Morphism<K>& m) {
  json out = json::object();
  for (std::size_t v = 0; v < m.components.size(); ++v) out[r.quiver.vertices()[v]] = matrix_json(m.components[v]);
  return out;
}

template <ExactField K>
json rep_json(const Representation<K>& r) {
  json dims = json::object(), maps = json::object();
  for (std::size_t v = 0; v < r.dims.size(); ++v) dims[r.quiver.vertices()[v]] = std::to_string(r.dims[v]);
  for (std::size_t a = 0; a < r.maps.size(); ++a) maps[r.quiver.arrow(a).id] = matrix_json(r.maps[a]);
  return json{{"dims", std::move(dims)}, {"maps", std::move(maps)}};
}

std::string dims_text(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
  return s + ")";
}

template <ExactField K>
void print_morphism(std::ostream& out, const Representation<K>& r, const Morphism<K>& m, const std::string& indent) {
  for (std::size_t v = 0; v < m.components.size(); ++v)
    out << indent << r.quiver.vertices()[v] << ": " << m.components[v].to_string() << "\n";
}

template <ExactField K>
void print_maps(std::ostream& out, const Representation<K>& r, const std::string& indent) {
  for (std::size_t a = 0; a < r.maps.size(); ++a)
    out << indent << r.quiver.arrow(a).id << ": " << r.maps[a].to_string() << "\n";
}

template <class Fn>
int with_rep(const Document& d, Fn&& fn) {
  return std::visit(
      [&](const auto& body) -> int {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Representation<PrimeField>> || std::is_same_v<T, Representation<RationalField>>)
          return fn(body);
        else
          throw Error(Errc::SchemaError, "$: expected a representation document, got a pairing");
      },
      d.body);
}

template <class Fn>
int with_two_reps(const Document& a, const Document& b, Fn&& fn) {
  return with_rep(a, [&](const auto& ra) {
    return with_rep(b, [&](const auto& rb) -> int {
      if constexpr (std::is_same_v<std::decay_t<decltype(ra)>, std::decay_t<decltype(rb)>>)
        return fn(ra, rb);
      else
        throw Error(Errc::MismatchedContext, "documents are over different fields");
    });
  });
}

template <class Fn>
int with_pairing(const Document& d, Fn&& fn) {
  return std::visit(
      [&](const auto& body) -> int {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Pairing<PrimeField>> || std::is_same_v<T, Pairing<RationalField>>)
          return fn(body);
        else
          throw Error(Errc::SchemaError, "$: expected a pairing document, got a representation");
      },
      d.body);
}

template <class Fn>
int with_two_pairings(const Document& a, const Document& b, Fn&& fn) {
  return with_pairing(a, [&](const auto& pa) {
    return with_pairing(b, [&](const auto& pb) -> int {
      if constexpr (std::is_same_v<std::decay_t<decltype(pa)>, std::decay_t<decltype(pb)>>)
        return fn(pa, pb);
      else
        throw Error(Errc::MismatchedContext, "documents are over different fields");
    });
  });
}

struct Options {
  bool json = false;
  bool witnesses = false;
  std::uint64_t seed = 1;
  std::string method = "direct";
  std::vector<std::string> files;
  std::string endo;
  std::vector<std::uint64_t> orders;
  std::uint64_t k = 2;
  std::size_t cases = 20;
  std::size_t max_dim = 8;
};

int cmd_hom(const Options& o, std::ostream& out) {
  auto a = read_document_file(o.files.at(0));
  auto b = read_document_file(o.files.at(1));
  return with_two_reps(a, b, [&](const auto& ra, const auto& rb) {
    auto hom = hom_space(ra, rb);
    if (o.json) {
      json basis = json::array();
      for (const auto& m : hom.basis) basis.push_back(morphism_json(ra, m));
      out << json{{"dimension", std::to_string(hom.dimension())}, {"basis", std::move(basis)}}.dump() << "\n";
    } else {
      out << "dimension: " << hom.dimension() << "\n";
      for (std::size_t i = 0; i < hom.basis.size(); ++i) {
        out << "basis " << i << ":\n";
        print_morphism(out, ra, hom.basis[i], "  ");
      }
    }
    return kExitOk;
  });
}

int cmd_end(const Options& o, std::ostream& out) {
  if (o.method != "direct" && o.method != "centralizer")
    throw Error(Errc::InvalidArgument, "--method must be 'direct' or 'centralizer'");
  auto d = read_document_file(o.files.at(0));
  return with_rep(d, [&](const auto& r) {
    auto A = o.method == "direct" ? end_algebra(r) : end_via_centralizers(r);
    auto J = jacobson_radical(A);
    if (o.json) {
      json basis = json::array();
      for (const auto& b : A.basis()) basis.push_back(morphism_json(r, Morphism<std::decay_t<decltype(r.field)>>{b}));
      out << json{{"dimension", std::to_string(A.dimension())},
                  {"radical_dimension", std::to_string(J.basis.size())},
                  {"basis", std::move(basis)}}
                 .dump()
          << "\n";
    } else {
      out << "dimension: " << A.dimension() << "\n";
      out << "radical dimension: " << J.basis.size() << "\n";
      for (std::size_t i = 0; i < A.dimension(); ++i) {
        out << "basis " << i << ":\n";
        print_morphism(out, r, Morphism<std::decay_t<decltype(r.field)>>{A.basis()[i]}, "  ");
      }
    }
    return kExitOk;
  });
}

int cmd_decompose(const Options& o, std::ostream& out) {
  auto d = read_document_file(o.files.at(0));
  PathRelations rels = d.relations.value_or(PathRelations{});
  return with_rep(d, [&](const auto& r) {
    Rng rng(derive_seed(o.seed, "decompose"));
    auto dec = krull_schmidt(r, rng, rels);
    if (o.json) {
      json summands = json::array();
      for (const auto& s : dec.summands) {
        json js = rep_json(s.rep);
        js["multiplicity"] = std::to_string(s.multiplicity);
        if (o.witnesses) {
          json ws = json::array();
          for (const auto& w : s.witnesses)
            ws.push_back({{"inclusion", morphism_json(r, w.inclusion)}, {"projection", morphism_json(s.rep, w.projection)}});
          js["witnesses"] = std::move(ws);
        }
        summands.push_back(std::move(js));
      }
      out << json{{"certainty", std::string(certainty_name(dec.certainty))},
                  {"summands", std::move(summands)},
                  {"copies", std::to_string(dec.total_copies())}}
                 .dump()
          << "\n";
    } else {
      out << "summands: " << dec.summands.size() << " (copies " << dec.total_copies() << ")\n";
      out << "certainty: " << certainty_name(dec.certainty) << "\n";
      for (std::size_t i = 0; i < dec.summands.size(); ++i) {
        const auto& s = dec.summands[i];
        out << "summand " << i << ": dims " << dims_text(s.rep.dims) << " multiplicity " << s.multiplicity << "\n";
        print_maps(out, s.rep, "  ");
        if (!o.witnesses) continue;
        for (std::size_t c = 0; c < s.witnesses.size(); ++c) {
          out << "  copy " << c << " inclusion:\n";
          print_morphism(out, r, s.witnesses[c].inclusion, "    ");
          out << "  copy " << c << " projection:\n";
          print_morphism(out, s.rep, s.witnesses[c].projection, "    ");
        }
      }
    }
    return kExitOk;
  });
}

int cmd_iso(const Options& o, std::ostream& out) {
  auto a = read_document_file(o.files.at(0));
  auto b = read_document_file(o.files.at(1));
  return with_two_reps(a, b, [&](const auto& ra, const auto& rb) {
    Rng rng(derive_seed(o.seed, "iso"));
    auto w = is_isomorphic(ra, rb, rng);
    if (o.json) {
      json j{{"isomorphic", w.has_value()}};
      if (w) {
        j["forward"] = morphism_json(ra, w->forward);
        j["inverse"] = morphism_json(ra, w->inverse);
      }
      out << j.dump() << "\n";
    } else if (w) {
      out << "isomorphic\nforward:\n";
      print_morphism(out, ra, w->forward, "  ");
      out << "inverse:\n";
      print_morphism(out, ra, w->inverse, "  ");
    } else {
      out << "not isomorphic\n";
    }
    return w ? kExitOk : kExitNegative;
  });
}

int cmd_fitting(const Options& o, std::ostream& out) {
  auto d = read_document_file(o.files.at(0));
  auto endo_text = read_text_file(o.endo);
  return with_rep(d, [&](const auto& r) {
    auto t = parse_morphism(endo_text, r);
    auto fs = d.relations ? fitting_for_functor(r, *d.relations, t) : fitting_split(r, t);
    if (o.json) {
      out << json{{"e", morphism_json(r, fs.e)},
                  {"rho0", rep_json(fs.rho0)},
                  {"rho1", rep_json(fs.rho1)},
                  {"t0", morphism_json(fs.rho0, fs.t0)},
                  {"t1", morphism_json(fs.rho1, fs.t1)},
                  {"t0_nilpotency_index", std::to_string(fs.nilpotency_index)}}
                 .dump()
          << "\n";
    } else {
      out << "associated idempotent:\n";
      print_morphism(out, r, fs.e, "  ");
      out << "nilpotent part rho0: dims " << dims_text(fs.rho0.dims) << "\n";
      print_maps(out, fs.rho0, "  ");
      out << "  t0 (nilpotency index " << fs.nilpotency_index << "):\n";
      print_morphism(out, fs.rho0, fs.t0, "    ");
      out << "invertible part rho1: dims " << dims_text(fs.rho1.dims) << "\n";
      print_maps(out, fs.rho1, "  ");
      out << "  t1:\n";
      print_morphism(out, fs.rho1, fs.t1, "    ");
    }
    return kExitOk;
  });
}

template <ExactField K>
json pairing_json(const Pairing<K>& w) {
  json grams = json::array();
  for (const auto& g : w.grams) grams.push_back(matrix_json(g));
  return json{{"dim_a", std::to_string(w.dim_a)},
              {"dim_b", std::to_string(w.dim_b)},
              {"dim_m", std::to_string(w.dim_m)},
              {"grams", std::move(grams)}};
}

template <ExactField K>
void print_pairing(std::ostream& out, const Pairing<K>& w, const std::string& indent) {
  for (std::size_t k = 0; k < w.grams.size(); ++k) out << indent << "G" << k << ": " << w.grams[k].to_string() << "\n";
}

int cmd_pairing_decompose(const Options& o, std::ostream& out) {
  auto d = read_document_file(o.files.at(0));
  return with_pairing(d, [&](const auto& w) {
    Rng rng(derive_seed(o.seed, "pairing-decompose"));
    auto dec = orthogonal_decompose(w, rng);
    std::size_t copies = 0;
    for (const auto& s : dec.summands) copies += s.multiplicity;
    if (o.json) {
      json summands = json::array();
      for (const auto& s : dec.summands) {
        json js = pairing_json(s.pairing);
        js["multiplicity"] = std::to_string(s.multiplicity);
        if (o.witnesses) {
          json ws = json::array();
          for (const auto& wit : s.witnesses) ws.push_back({{"a_basis", matrix_json(wit.a_basis)}, {"b_basis", matrix_json(wit.b_basis)}});
          js["witnesses"] = std::move(ws);
        }
        summands.push_back(std::move(js));
      }
      json j{{"certainty", std::string(certainty_name(dec.certainty))},
             {"summands", std::move(summands)},
             {"copies", std::to_string(copies)}};
      if (o.witnesses) {
        j["p"] = matrix_json(dec.p);
        j["q"] = matrix_json(dec.q);
      }
      out << j.dump() << "\n";
    } else {
      out << "summands: " << dec.summands.size() << " (copies " << copies << ")\n";
      out << "certainty: " << certainty_name(dec.certainty) << "\n";
      for (std::size_t i = 0; i < dec.summands.size(); ++i) {
        const auto& s = dec.summands[i];
        out << "summand " << i << ": dims (" << s.pairing.dim_a << ", " << s.pairing.dim_b << ") multiplicity "
            << s.multiplicity << "\n";
        print_pairing(out, s.pairing, "  ");
      }
      if (o.witnesses) {
        out << "base change P: " << dec.p.to_string() << "\n";
        out << "base change Q: " << dec.q.to_string() << "\n";
      }
    }
    return kExitOk;
  });
}

int cmd_pairing_isometry(const Options& o, std::ostream& out) {
  auto a = read_document_file(o.files.at(0));
  auto b = read_document_file(o.files.at(1));
  return with_two_pairings(a, b, [&](const auto& x, const auto& y) {
    Rng rng(derive_seed(o.seed, "pairing-isometry"));
    auto w = isometry_test(x, y, rng);
    if (o.json) {
      json j{{"isometric", w.has_value()}};
      if (w) {
        j["f"] = matrix_json(w->f);
        j["h"] = matrix_json(w->h);
      }
      out << j.dump() << "\n";
    } else if (w) {
      out << "isometric\nf: " << w->f.to_string() << "\nh: " << w->h.to_string() << "\n";
    } else {
      out << "not isometric\n";
    }
    return w ? kExitOk : kExitNegative;
  });
}

int cmd_demo_abelian(const Options& o, std::ostream& out) {
  FiniteAbelianGroup a{o.orders};
  auto res = abelian_fitting_demo(a, o.k);
  auto orders_json = [](const FiniteAbelianGroup& g) {
    json arr = json::array();
    for (auto n : g.orders) arr.push_back(std::to_string(n));
    return arr;
  };
  if (o.json) {
    out << json{{"a", orders_json(a)}, {"k", std::to_string(o.k)}, {"f0", orders_json(res.f0)}, {"f1", orders_json(res.f1)}}
               .dump()
        << "\n";
  } else {
    out << "A = " << a.to_string() << "\n";
    out << "k = " << o.k << "\n";
    out << "F0 = " << res.f0.to_string() << "  (multiplication by k eventually zero)\n";
    out << "F1 = " << res.f1.to_string() << "  (multiplication by k invertible)\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto report = run_verify({o.seed, o.cases, o.max_dim});
  out << (o.json ? format_json(report) : format_text(report));
  return report.failures() == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact decompositions of quiver representations and bilinear pairings", "quiverks"};
  app.require_subcommand(1);
  Options o;
  int (*command)(const Options&, std::ostream&) = nullptr;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable JSON output"); };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "Seed for randomized steps")->capture_default_str(); };

  auto* hom = app.add_subcommand("hom", "Basis of Hom between two representations");
  hom->add_option("source", o.files, "Source and target documents")->required()->expected(2);
  add_json(hom);
  hom->callback([&] { command = cmd_hom; });

  auto* end = app.add_subcommand("end", "Endomorphism algebra of a representation");
  end->add_option("file", o.files, "Representation document")->required()->expected(1);
  end->add_option("--method", o.method, "direct | centralizer")->capture_default_str();
  add_json(end);
  end->callback([&] { command = cmd_end; });

  auto* dec = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  dec->add_option("file", o.files, "Representation document")->required()->expected(1);
  add_seed(dec);
  dec->add_flag("--witnesses", o.witnesses, "Print inclusion and projection witnesses");
  add_json(dec);
  dec->callback([&] { command = cmd_decompose; });

  auto* iso = app.add_subcommand("iso", "Isomorphism test with witness");
  iso->add_option("files", o.files, "Two representation documents")->required()->expected(2);
  add_seed(iso);
  add_json(iso);
  iso->callback([&] { command = cmd_iso; });

  auto* fit = app.add_subcommand("fitting", "Fitting decomposition of an endomorphism");
  fit->add_option("file", o.files, "Representation document")->required()->expected(1);
  fit->add_option("--endo", o.endo, "Endomorphism document")->required();
  add_json(fit);
  fit->callback([&] { command = cmd_fitting; });

  auto* pair = app.add_subcommand("pairing", "Bilinear pairing commands");
  pair->require_subcommand(1);
  auto* pdec = pair->add_subcommand("decompose", "Orthogonal decomposition of a pairing");
  pdec->add_option("file", o.files, "Pairing document")->required()->expected(1);
  add_seed(pdec);
  pdec->add_flag("--witnesses", o.witnesses, "Print base changes");
  add_json(pdec);
  pdec->callback([&] { command = cmd_pairing_decompose; });
  auto* piso = pair->add_subcommand("isometry", "Isometry test with witness");
  piso->add_option("files", o.files, "Two pairing documents")->required()->expected(2);
  add_seed(piso);
  add_json(piso);
  piso->callback([&] { command = cmd_pairing_isometry; });

  auto* demo = app.add_subcommand("demo-abelian", "Fitting split of a finite abelian group under multiplication by k");
  demo->add_option("--orders", o.orders, "Cyclic factor orders")->required()->delimiter(',');
  demo->add_option("--k", o.k, "Multiplier")->capture_default_str();
  add_json(demo);
  demo->callback([&] { command = cmd_demo_abelian; });

  auto* ver = app.add_subcommand("verify", "Seeded randomized property harness");
  add_seed(ver);
  ver->add_option("--cases", o.cases, "Number of cases")->capture_default_str();
  ver->add_option("--max-dim", o.max_dim, "Largest total dimension")->capture_default_str();
  add_json(ver);
  ver->callback([&] { command = cmd_verify; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    return command(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InvariantViolation ? kExitInternal : kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace qks::cli
