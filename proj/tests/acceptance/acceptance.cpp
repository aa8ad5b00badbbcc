// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "quiverks/decompose.hpp"
#include "quiverks/fitting.hpp"
#include "quiverks/generate.hpp"
#include "quiverks/pairing.hpp"

using namespace qks;
using F = PrimeField;
using M = Matrix<F>;
using R = Representation<F>;

namespace {

const F kField(101);

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects the first failure; later checks still run so counts stay honest.
struct Tally {
  std::size_t passed = 0, total = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++total;
    if (ok)
      ++passed;
    else if (first_failure.empty())
      first_failure = what;
  }

  Outcome outcome(const std::string& unit) const {
    Outcome o{passed == total, std::to_string(passed) + "/" + std::to_string(total) + " " + unit};
    if (!o.pass) o.detail += "; first failure: " + first_failure;
    return o;
  }
};

std::uint64_t case_seed(const char* criterion, std::size_t i) { return derive_seed(20261018, criterion, i); }

/// Random representation over F_101: up to 3 vertices and 3 arrows, twists
/// up to 2. Half the cases are direct sums so that splitting is exercised.
R random_instance(Rng& rng, std::size_t max_total) {
  auto q = random_quiver(rng, 3, 3);
  auto real = rng.coin() ? random_realization(q, rng, 2) : Realization::trivial(q);
  if (rng.coin()) {
    auto a = random_rep(q, real, random_dims(q.vertex_count(), max_total / 2, rng), kField, rng);
    auto b = rng.coin() ? a : random_rep(q, real, random_dims(q.vertex_count(), max_total / 2, rng), kField, rng);
    return direct_sum(a, b).sum;
  }
  return random_rep(q, real, random_dims(q.vertex_count(), max_total, rng), kField, rng);
}

template <class Body>
void guarded(Tally& t, std::size_t i, Body body) {
  try {
    body();
  } catch (const std::exception& e) {
    t.record(false, "case " + std::to_string(i) + " threw: " + e.what());
  }
}

Outcome end_constructions_agree() {
  Tally t;
  for (std::size_t i = 0; i < 50; ++i)
    guarded(t, i, [&] {
      Rng rng(case_seed("end", i));
      auto rho = random_instance(rng, 10);
      t.record(rho.total_dimension() <= 10 && same_subspace(end_algebra(rho), end_via_centralizers(rho)),
               "case " + std::to_string(i) + ": bases differ");
    });
  return t.outcome("representations with identical End bases");
}

Outcome krull_schmidt_reassembles() {
  Tally t;
  std::size_t split_cases = 0, pieces = 0;
  for (std::size_t i = 0; i < 100; ++i)
    guarded(t, i, [&] {
      Rng gen(case_seed("ks", i));
      auto rho = random_instance(gen, 12);
      Rng rng(1);
      auto d = krull_schmidt(rho, rng);
      pieces += d.total_copies();
      split_cases += d.total_copies() > 1 ? 1 : 0;
      auto w = reassembly_witness(d);
      bool ok = is_morphism(reassemble(d), rho, w.forward) && is_isomorphism(w.forward) &&
                compose(w.inverse, w.forward) == identity_morphism(reassemble(d));
      auto total = zero_morphism(rho, rho);
      for (const auto& s : d.summands) {
        Rng local(7);
        ok = ok && is_local(end_algebra(s.rep), local);
        for (const auto& wit : s.witnesses) total = add(total, compose(wit.inclusion, wit.projection));
      }
      ok = ok && total == identity_morphism(rho);
      t.record(ok, "case " + std::to_string(i));
    });
  auto o = t.outcome("decompositions reassembled with local summands");
  o.detail += ", " + std::to_string(split_cases) + " split, " + std::to_string(pieces) + " summands in all";
  return o;
}

Outcome seeds_agree() {
  Tally t;
  for (std::size_t i = 0; i < 100; ++i)
    guarded(t, i, [&] {
      Rng gen(case_seed("ks", i));
      auto rho = random_instance(gen, 12);
      Rng r1(1), r2(2);
      auto rep = verify_uniqueness(krull_schmidt(rho, r1), krull_schmidt(rho, r2));
      t.record(rep.matched, "case " + std::to_string(i) + ": " + rep.mismatch);
    });
  return t.outcome("seed-1/seed-2 decompositions matched");
}

Outcome known_classifications() {
  Tally t;
  Rng rng(1);
  auto a2 = fixtures::a2_rep(kField, 2, 2, fixtures::mat(kField, {{1, 0}, {0, 0}}));
  auto d = krull_schmidt(a2, rng);
  std::vector<std::vector<std::size_t>> dims;
  for (const auto& s : d.summands)
    for (std::size_t c = 0; c < s.multiplicity; ++c) dims.push_back(s.rep.dims);
  t.record(dims == std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}, {1, 1}} &&
               d.summands.size() == 3 && d.summands[2].rep.maps[0] == fixtures::mat(kField, {{1}}),
           "A2 rank-one: wrong summands");

  auto jl = fixtures::loop_rep(fixtures::diag_blocks({fixtures::jordan(kField, 2, 1), fixtures::jordan(kField, 3, 2)}));
  auto dj = krull_schmidt(jl, rng);
  t.record(dj.total_copies() == 2 && dj.summands.size() == 2 && dj.summands[0].rep.dims[0] == 2 &&
               dj.summands[1].rep.dims[0] == 3,
           "Jordan loop: wrong summands");
  return t.outcome("classifications reproduced");
}

/// Checks every Fitting invariant componentwise with plain matrix arithmetic.
bool fitting_invariants_hold(const R& rho, const Morphism<F>& t, const FittingSplit<F>& fs) {
  for (std::size_t v = 0; v < rho.dims.size(); ++v) {
    const auto& e = fs.e.components[v];
    const auto& tv = t.components[v];
    std::size_t n = rho.dims[v];
    auto one = M::identity(kField, n);
    auto comp = one - e;
    if (!(e * e == e) || !(e * tv == tv * e)) return false;
    if (!(tv == e * tv * e + comp * tv * comp)) return false;
    auto nil = comp * tv;
    auto pw = one;
    for (std::size_t k = 0; k < n; ++k) pw = pw * nil;
    if (!pw.is_zero()) return false;
    // ete is invertible in eAe: restricted to im(e) it has full rank.
    auto [ie, pe] = rank_factorization(e);
    if (!is_invertible_matrix(pe * tv * ie)) return false;
    if (oracle::to_raw(e) != oracle::stable_projection(oracle::to_raw(tv), 101)) return false;
  }
  return is_isomorphism(fs.t1) && morphism_nilpotency(fs.rho0, fs.t0).has_value() &&
         add(compose(fs.i0, compose(fs.t0, fs.p0)), compose(fs.i1, compose(fs.t1, fs.p1))) == t;
}

Outcome fitting_invariants() {
  Tally t;
  for (std::size_t i = 0; i < 100; ++i)
    guarded(t, i, [&] {
      Rng rng(case_seed("fitting", i));
      auto rho = random_instance(rng, 10);
      auto endo = random_singular_endomorphism(rho, rng);
      t.record(fitting_invariants_hold(rho, endo, fitting_split(rho, endo)), "case " + std::to_string(i));
    });
  return t.outcome("(rho, t) pairs satisfying every invariant");
}

/// The total order 0 < 1 < 2 < 3 as a category: one morphism i -> j for i <= j.
FiniteCategory chain_category() {
  FiniteCategory c;
  auto id = [](std::size_t i, std::size_t j) { return i == j ? "1_" + std::to_string(i) : std::to_string(i) + std::to_string(j); };
  for (std::size_t i = 0; i < 4; ++i) c.objects.push_back(std::to_string(i));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) c.morphisms.push_back({id(i, j), std::to_string(i), std::to_string(j), i == j});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      for (std::size_t k = j; k < 4; ++k) c.compose[{id(j, k), id(i, j)}] = id(i, k);
  return c;
}

Outcome functor_restriction_compatible() {
  Tally t;
  auto pq = category_to_quiver(chain_category());
  const auto& q = pq.quiver;
  for (std::size_t i = 0; i < 20; ++i)
    guarded(t, i, [&] {
      Rng rng(case_seed("functor", i));
      std::vector<std::size_t> dims(4);
      for (auto& d : dims) d = 1 + rng.uniform(3);
      // Generating maps on consecutive objects; every other arrow is their product.
      std::vector<M> step;
      for (std::size_t v = 0; v + 1 < 4; ++v) step.push_back(M::random(kField, dims[v + 1], dims[v], rng));
      auto rho = R::zero_maps(kField, q, Realization::trivial(q), dims);
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const auto& arr = q.arrow(a);
        auto m = M::identity(kField, dims[arr.source]);
        for (std::size_t v = arr.source; v < arr.target; ++v) m = step[v] * m;
        rho.maps[a] = m;
      }
      auto endo = random_singular_endomorphism(rho, rng);
      auto whole = fitting_for_functor(rho, pq.relations, endo);
      bool ok = true;
      for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v) {
          auto sub = full_subquiver(q, pq.relations, {u, v});
          auto part = fitting_for_functor(restrict_to(rho, sub), sub.relations, restrict_to(endo, sub));
          ok = ok && part.e.components[0] == whole.e.components[u] && part.e.components[1] == whole.e.components[v];
        }
      t.record(ok, "case " + std::to_string(i));
    });
  return t.outcome("functors with compatible restricted idempotents");
}

Outcome cancellation_holds() {
  Tally t;
  for (std::size_t i = 0; i < 100; ++i)
    guarded(t, i, [&] {
      Rng rng(case_seed("cancel", i));
      auto q = random_quiver(rng, 3, 3);
      auto real = rng.coin() ? random_realization(q, rng, 2) : Realization::trivial(q);
      auto x = random_rep(q, real, random_dims(q.vertex_count(), 6, rng), kField, rng);
      auto y = random_rep(q, real, random_dims(q.vertex_count(), 6, rng), kField, rng);
      auto z = conjugate(y, random_vertex_automorphism(y, rng));
      auto verdict = cancellation_check(x, y, z, rng);
      bool ok = verdict.hypothesis && verdict.conclusion && verdict.witness.has_value() &&
                is_morphism(y, z, verdict.witness->forward) && is_morphism(z, y, verdict.witness->inverse) &&
                compose(verdict.witness->inverse, verdict.witness->forward) == identity_morphism(y);
      t.record(ok, "case " + std::to_string(i));
    });
  return t.outcome("cancellation instances with verified witness");
}

bool pairing_decompositions_match(const PairingDecomposition<F>& a, const PairingDecomposition<F>& b) {
  std::vector<Pairing<F>> left, right;
  for (const auto& s : a.summands)
    for (std::size_t c = 0; c < s.multiplicity; ++c) left.push_back(s.pairing);
  for (const auto& s : b.summands)
    for (std::size_t c = 0; c < s.multiplicity; ++c) right.push_back(s.pairing);
  if (left.size() != right.size()) return false;
  std::vector<bool> used(right.size(), false);
  for (const auto& l : left) {
    bool found = false;
    for (std::size_t j = 0; j < right.size() && !found; ++j) {
      if (used[j]) continue;
      auto w = isometric_indecomposables(l, right[j]);
      if (w && is_isometry(l, right[j], *w)) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

Outcome pairing_decomposition() {
  Tally t;
  guarded(t, 0, [&] {
    Rng rng(1);
    auto w = Pairing<F>::make(kField, 3, 3, 1, {fixtures::mat(kField, {{1, 0, 0}, {0, 2, 0}, {0, 0, 0}})});
    auto d = orthogonal_decompose(w, rng);
    std::size_t nondeg = 0, a_only = 0, b_only = 0, copies = 0;
    for (const auto& s : d.summands) {
      copies += s.multiplicity;
      if (s.pairing.dim_a == 1 && s.pairing.dim_b == 1 && !s.pairing.grams[0].is_zero()) nondeg += s.multiplicity;
      if (s.pairing.dim_a == 1 && s.pairing.dim_b == 0) a_only += s.multiplicity;
      if (s.pairing.dim_a == 0 && s.pairing.dim_b == 1) b_only += s.multiplicity;
    }
    t.record(copies == 4 && nondeg == 2 && a_only == 1 && b_only == 1, "diag(1,2,0): wrong summands");
    auto back = reassemble(d);
    auto iso = isometry_test(w, back, rng);
    t.record(iso.has_value() && is_isometry(w, back, *iso), "diag(1,2,0): reassembly not isometric");
  });
  for (std::size_t i = 0; i < 50; ++i)
    guarded(t, i, [&] {
      Rng gen(case_seed("pairing", i));
      std::size_t m = 1 + gen.uniform(2);
      auto w = gen.coin() ? random_pairing(kField, gen.uniform(5), gen.uniform(5), m, gen)
                          : random_decomposable_pairing(kField, 4, 4, m, gen);
      bool ok = w.dim_a <= 4 && w.dim_b <= 4;
      Rng r1(1), r2(2);
      auto d1 = orthogonal_decompose(w, r1);
      auto d2 = orthogonal_decompose(w, r2);
      ok = ok && pairing_decompositions_match(d1, d2);
      auto back = reassemble(d1);
      auto iso = isometry_test(w, back, r1);
      ok = ok && iso.has_value() && is_isometry(w, back, *iso);
      t.record(ok, "random pairing " + std::to_string(i));
    });
  return t.outcome("pairing checks");
}

Outcome abelian_demo() {
  Tally t;
  auto r = abelian_fitting_demo({{12}}, 2);
  t.record(r.f0.orders == std::vector<std::uint64_t>{4} && r.f1.orders == std::vector<std::uint64_t>{3},
           "Z/12 with k = 2");
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng(case_seed("abelian", i));
    FiniteAbelianGroup a;
    std::size_t factors = 1 + rng.uniform(3);
    for (std::size_t j = 0; j < factors; ++j) a.orders.push_back(1 + rng.uniform(1000));
    std::uint64_t k = 1 + rng.uniform(50);
    auto s = abelian_fitting_demo(a, k);
    bool ok = s.f0.order() * s.f1.order() == a.order();
    for (auto n : s.f0.orders) {
      // multiplication by k is eventually zero on Z/n: k^j = 0 mod n for some j < 64
      std::uint64_t x = 1 % n;
      bool zero = false;
      for (int j = 0; j < 64 && !zero; ++j) zero = (x = x * k % n) == 0;
      ok = ok && zero;
    }
    for (auto n : s.f1.orders) ok = ok && std::gcd(n, k) == 1;
    t.record(ok, a.to_string() + " with k = " + std::to_string(k));
  }
  return t.outcome("abelian splits");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"End via Hom equals End via centralizers", end_constructions_agree},
      {"Krull-Schmidt reassembly", krull_schmidt_reassembles},
      {"decomposition is seed-independent", seeds_agree},
      {"known classifications", known_classifications},
      {"Fitting invariants", fitting_invariants},
      {"functor restriction compatibility", functor_restriction_compatible},
      {"cancellation", cancellation_holds},
      {"pairing decomposition", pairing_decomposition},
      {"abelian group demo", abelian_demo},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
