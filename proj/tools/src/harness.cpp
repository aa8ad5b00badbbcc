#include "quiverks_cli/harness.hpp"

#include <functional>
#include <sstream>

#include "json.hpp"
#include "quiverks/decompose.hpp"
#include "quiverks/fitting.hpp"
#include "quiverks/generate.hpp"

namespace qks::cli {

namespace {

using F = PrimeField;

constexpr std::uint64_t kVerifyPrime = 101;

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  try {
    auto detail = body();
    return {name, true, detail};
  } catch (const Error& e) {
    return {name, false, e.what()};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

/// Stacked intertwining map assembled by evaluating on unit vectors; an
/// independent route to the Hom dimension.
std::size_t hom_nullity_by_evaluation(const Representation<F>& a, const Representation<F>& b) {
  const auto& f = a.field;
  std::size_t unknowns = 0;
  for (std::size_t v = 0; v < a.dims.size(); ++v) unknowns += a.dims[v] * b.dims[v];
  std::vector<std::vector<F::value_type>> cols;
  for (std::size_t v = 0, base = 0; v < a.dims.size(); base += a.dims[v] * b.dims[v], ++v)
    for (std::size_t k = 0; k < a.dims[v] * b.dims[v]; ++k) {
      auto psi = zero_morphism(a, b);
      psi.components[v].data()[k] = f.one();
      std::vector<F::value_type> col;
      for (std::size_t arrow = 0; arrow < a.quiver.arrow_count(); ++arrow) {
        const auto& arr = a.quiver.arrow(arrow);
        const auto& tw = a.realization.twists[arrow];
        auto diff = kron(psi.components[arr.target], Matrix<F>::identity(f, tw.t)) * a.maps[arrow] -
                    b.maps[arrow] * kron(psi.components[arr.source], Matrix<F>::identity(f, tw.s));
        col.insert(col.end(), diff.data().begin(), diff.data().end());
      }
      cols.push_back(std::move(col));
    }
  if (unknowns == 0) return 0;
  std::size_t rows = cols.front().size();
  Matrix<F> m(f, rows, unknowns);
  for (std::size_t c = 0; c < unknowns; ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return unknowns - rank(m);
}

/// Projection onto im(t^N) along ker(t^N), N the size of t.
Matrix<F> stable_image_projection(const Matrix<F>& t) {
  const auto& f = t.field();
  std::size_t n = t.rows();
  auto power = Matrix<F>::identity(f, n);
  for (std::size_t k = 0; k < n; ++k) power = power * t;
  auto image = rref(power);
  auto img_basis = power.columns(image.pivots);
  auto ker_basis = nullspace(power);
  auto change = hstack(img_basis, ker_basis);
  auto inv = inverse(change);
  ensure(inv.has_value(), "image and kernel of t^N are not complementary");
  Matrix<F> d(f, n, n);
  for (std::size_t i = 0; i < img_basis.cols(); ++i) d(i, i) = f.one();
  return change * d * *inv;
}

std::string dims_string(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

CaseReport run_case(const VerifyOptions& opt, std::size_t index) {
  Rng rng(derive_seed(opt.seed, "verify", index));
  F field(kVerifyPrime);
  auto q = random_quiver(rng, 3, 3);
  bool twisted = rng.coin();
  auto real = twisted ? random_realization(q, rng, 2) : Realization::trivial(q);
  Representation<F> rho = Representation<F>::zero_maps(field, q, real, std::vector<std::size_t>(q.vertex_count(), 0));
  bool split = rng.coin() && opt.max_dim >= 2;
  if (split) {
    auto d1 = random_dims(q.vertex_count(), opt.max_dim / 2, rng);
    auto d2 = random_dims(q.vertex_count(), opt.max_dim / 2, rng);
    auto r1 = random_rep(q, real, d1, field, rng);
    auto r2 = random_rep(q, real, d2, field, rng);
    rho = direct_sum(r1, r2).sum;
  } else {
    rho = random_rep(q, real, random_dims(q.vertex_count(), opt.max_dim, rng), field, rng);
  }

  CaseReport rep;
  rep.index = index;
  rep.summary = std::to_string(q.vertex_count()) + "v/" + std::to_string(q.arrow_count()) + "a " +
                (twisted ? "twisted" : "trivial") + " dims=" + dims_string(rho.dims);

  rep.checks.push_back(run_check("end", [&] {
    auto a = end_algebra(rho);
    auto b = end_via_centralizers(rho);
    if (!same_subspace(a, b)) throw Error(Errc::InvariantViolation, "direct and centralizer bases differ");
    return "dim " + std::to_string(a.dimension());
  }));
  rep.checks.push_back(run_check("hom", [&] {
    auto hom = hom_space(rho, rho);
    for (const auto& m : hom.basis)
      if (!is_morphism(rho, rho, m)) throw Error(Errc::InvariantViolation, "basis element fails the intertwining equation");
    if (hom.dimension() != hom_nullity_by_evaluation(rho, rho))
      throw Error(Errc::InvariantViolation, "Hom dimension disagrees with the evaluated system");
    return std::string("ok");
  }));
  rep.checks.push_back(run_check("krull-schmidt", [&] {
    Rng r1 = rng.fork("ks", 1);
    Rng r2 = rng.fork("ks", 2);
    auto d1 = krull_schmidt(rho, r1);
    reassembly_witness(d1);
    for (const auto& s : d1.summands)
      if (!is_local(end_algebra(s.rep), r1)) throw Error(Errc::InvariantViolation, "summand is not local");
    auto d2 = krull_schmidt(rho, r2);
    auto match = verify_uniqueness(d1, d2);
    if (!match.matched) throw Error(Errc::InvariantViolation, "seed-dependent decomposition: " + match.mismatch);
    return std::to_string(d1.total_copies()) + " summands";
  }));
  rep.checks.push_back(run_check("fitting", [&] {
    Rng r = rng.fork("fitting");
    auto t = random_singular_endomorphism(rho, r);
    auto fs = fitting_split(rho, t);
    for (std::size_t v = 0; v < rho.dims.size(); ++v)
      if (!(fs.e.components[v] == stable_image_projection(t.components[v])))
        throw Error(Errc::InvariantViolation, "associated idempotent differs from the stable-image projection");
    return "rho0 " + dims_string(fs.rho0.dims) + " rho1 " + dims_string(fs.rho1.dims);
  }));
  return rep;
}

}  // namespace

bool CaseReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.passed() ? 0 : 1;
  return n;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.cases == 0) throw Error(Errc::InvalidArgument, "--cases must be positive");
  if (options.max_dim == 0) throw Error(Errc::InvalidArgument, "--max-dim must be positive");
  VerifyReport report{options, {}};
  for (std::size_t i = 0; i < options.cases; ++i) report.cases.push_back(run_case(options, i));
  return report;
}

std::string format_text(const VerifyReport& report) {
  std::ostringstream out;
  out << "verify seed=" << report.options.seed << " cases=" << report.options.cases
      << " max-dim=" << report.options.max_dim << " field=F_" << kVerifyPrime << "\n";
  for (const auto& c : report.cases) {
    out << "case " << c.index << " " << c.summary;
    for (const auto& chk : c.checks) {
      out << " " << chk.name << "=";
      if (chk.passed)
        out << "ok";
      else
        out << "FAIL[" << chk.detail << "]";
    }
    out << "\n";
  }
  out << "passed " << report.cases.size() - report.failures() << "/" << report.cases.size() << "\n";
  return out.str();
}

std::string format_json(const VerifyReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& chk : c.checks) checks[chk.name] = {{"passed", chk.passed}, {"detail", chk.detail}};
    cases.push_back({{"index", std::to_string(c.index)}, {"summary", c.summary}, {"checks", std::move(checks)}});
  }
  nlohmann::json j{{"seed", std::to_string(report.options.seed)},
                   {"cases", std::move(cases)},
                   {"max_dim", std::to_string(report.options.max_dim)},
                   {"passed", std::to_string(report.cases.size() - report.failures())},
                   {"total", std::to_string(report.cases.size())}};
  return j.dump() + "\n";
}

}  // namespace qks::cli
