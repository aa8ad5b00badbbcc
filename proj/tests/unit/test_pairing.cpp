#include "doctest.h"
#include "fixtures.hpp"
#include "quiverks/generate.hpp"
#include "quiverks/pairing.hpp"

using namespace qks;
using fixtures::mat;
using M = Matrix<PrimeField>;
using P = Pairing<PrimeField>;

namespace {

std::size_t copies(const PairingDecomposition<PrimeField>& d) {
  std::size_t n = 0;
  for (const auto& s : d.summands) n += s.multiplicity;
  return n;
}

void check_decomposition(const PairingDecomposition<PrimeField>& d) {
  const auto& w = d.original;
  auto sum = reassemble(d);
  for (std::size_t k = 0; k < w.dim_m; ++k) CHECK(d.p.transpose() * w.grams[k] * d.q == sum.grams[k]);
  for (const auto& s : d.summands) {
    CHECK(s.witnesses.size() == s.multiplicity);
    for (const auto& wit : s.witnesses)
      for (std::size_t k = 0; k < w.dim_m; ++k)
        CHECK(wit.a_basis.transpose() * w.grams[k] * wit.b_basis == s.pairing.grams[k]);
  }
}

}  // namespace

TEST_CASE("pairing shape validation") {
  PrimeField f(7);
  CHECK_THROWS_AS(P::make(f, 2, 2, 1, {}), Error);
  CHECK_THROWS_AS(P::make(f, 2, 2, 1, {M(f, 2, 3)}), Error);
  CHECK(P::zero(f, 2, 3, 2).grams.size() == 2);
}

TEST_CASE("pairing_hom examples") {
  PrimeField f(7);
  auto z = P::zero(f, 1, 1, 1);
  CHECK(pairing_hom(z, z).size() == 2);

  auto one = P::make(f, 1, 1, 1, {mat(f, {{1}})});
  auto h = pairing_hom(one, one);
  REQUIRE(h.size() == 1);
  CHECK(h[0].f == h[0].g);

  CHECK(pairing_hom(P::zero(f, 1, 0, 1), P::zero(f, 0, 1, 1)).empty());
  try {
    pairing_hom(P::zero(f, 1, 1, 1), P::zero(f, 1, 1, 2));
    FAIL("expected MismatchedM");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MismatchedM);
  }
}

TEST_CASE("pairing_hom solutions satisfy the form identity") {
  PrimeField f(101);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t m = 1 + rng.uniform(2);
    auto x = random_decomposable_pairing(f, 3, 3, m, rng);
    auto y = random_decomposable_pairing(f, 3, 3, m, rng);
    for (const auto& mor : pairing_hom(x, y)) CHECK(is_pairing_morphism(x, y, mor));
    auto hx = pairing_hom(x, x);
    for (std::size_t i = 0; i + 1 < hx.size(); ++i) CHECK(is_pairing_morphism(x, x, compose(hx[i], hx[i + 1])));
  }
}

TEST_CASE("pairing_end examples") {
  PrimeField f(7);
  auto z = pairing_end(P::zero(f, 1, 1, 1));
  CHECK(z.dimension() == 2);
  Rng rng(1);
  auto x = z.random_element(rng), y = z.random_element(rng);
  CHECK(z.mul(x, y) == z.mul(y, x));

  auto id = pairing_end(P::make(f, 2, 2, 1, {M::identity(f, 2)}));
  CHECK(id.dimension() == 4);
  for (const auto& b : id.basis()) CHECK(b[0] == b[1]);

  CHECK(pairing_end(P::zero(f, 0, 0, 1)).dimension() == 0);
}

TEST_CASE("orthogonal_decompose examples") {
  PrimeField f(101);
  Rng rng(1);
  auto w = P::make(f, 3, 3, 1, {mat(f, {{1, 0, 0}, {0, 2, 0}, {0, 0, 0}})});
  auto d = orthogonal_decompose(w, rng);
  check_decomposition(d);
  CHECK(copies(d) == 4);
  std::size_t nondeg = 0, a_only = 0, b_only = 0;
  for (const auto& s : d.summands) {
    if (s.pairing.dim_a == 1 && s.pairing.dim_b == 1) {
      CHECK(!s.pairing.grams[0].is_zero());
      nondeg += s.multiplicity;
    }
    if (s.pairing.dim_a == 1 && s.pairing.dim_b == 0) a_only += s.multiplicity;
    if (s.pairing.dim_a == 0 && s.pairing.dim_b == 1) b_only += s.multiplicity;
  }
  CHECK(nondeg == 2);
  CHECK(a_only == 1);
  CHECK(b_only == 1);
  auto back = isometry_test(w, reassemble(d), rng);
  REQUIRE(back.has_value());
  CHECK(is_isometry(w, reassemble(d), *back));

  auto z = orthogonal_decompose(P::zero(f, 2, 3, 1), rng);
  CHECK(copies(z) == 5);
  check_decomposition(z);

  auto single = orthogonal_decompose(P::make(f, 1, 1, 1, {mat(f, {{5}})}), rng);
  REQUIRE(single.summands.size() == 1);
  CHECK(single.summands[0].multiplicity == 1);
  CHECK(single.summands[0].pairing.dim_a == 1);
}

TEST_CASE("orthogonal_decompose is essentially unique across seeds") {
  PrimeField f(101);
  Rng gen(8);
  for (int trial = 0; trial < 15; ++trial) {
    auto w = random_decomposable_pairing(f, 3, 3, 1 + gen.uniform(2), gen);
    Rng r1(1), r2(2);
    auto d1 = orthogonal_decompose(w, r1);
    auto d2 = orthogonal_decompose(w, r2);
    check_decomposition(d1);
    REQUIRE(d1.summands.size() == d2.summands.size());
    for (std::size_t i = 0; i < d1.summands.size(); ++i) {
      CHECK(d1.summands[i].multiplicity == d2.summands[i].multiplicity);
      CHECK(isometric_indecomposables(d1.summands[i].pairing, d2.summands[i].pairing).has_value());
    }
  }
}

TEST_CASE("isometry_test examples") {
  PrimeField f(7);
  Rng rng(2);
  auto x = P::make(f, 2, 2, 1, {mat(f, {{1, 2}, {3, 4}})});
  auto self = isometry_test(x, x, rng);
  REQUIRE(self.has_value());
  CHECK(self->f == M::identity(f, 2));

  auto one = P::make(f, 1, 1, 1, {mat(f, {{1}})});
  auto nine = P::make(f, 1, 1, 1, {mat(f, {{9 % 7}})});
  auto w = isometry_test(one, nine, rng);
  REQUIRE(w.has_value());
  CHECK(is_isometry(one, nine, *w));

  auto r1 = P::make(f, 2, 2, 1, {mat(f, {{1, 0}, {0, 0}})});
  auto r2 = P::make(f, 2, 2, 1, {mat(f, {{1, 0}, {0, 1}})});
  CHECK(!isometry_test(r1, r2, rng).has_value());
}

TEST_CASE("isometry_test recovers random base changes") {
  PrimeField f(101);
  Rng rng(14);
  for (int trial = 0; trial < 15; ++trial) {
    auto x = random_decomposable_pairing(f, 3, 3, 2, rng);
    auto y = random_decomposable_pairing(f, 3, 3, 2, rng);
    // y' = x under a random simultaneous base change is always isometric to x
    auto pa = M::random(f, x.dim_a, x.dim_a, rng), pb = M::random(f, x.dim_b, x.dim_b, rng);
    if (!is_invertible_matrix(pa) || !is_invertible_matrix(pb)) continue;
    auto moved = x;
    for (auto& g : moved.grams) g = pa.transpose() * g * pb;
    auto w = isometry_test(x, moved, rng);
    REQUIRE(w.has_value());
    CHECK(is_isometry(x, moved, *w));
    auto wy = isometry_test(x, y, rng);
    if (wy) CHECK(is_isometry(x, y, *wy));
  }
}

TEST_CASE("quiver encoding has the same endomorphism dimension") {
  PrimeField f(101);
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    auto w = rng.coin() ? random_pairing(f, rng.uniform(4), rng.uniform(4), rng.uniform(3), rng)
                        : random_decomposable_pairing(f, 3, 3, 1 + rng.uniform(2), rng);
    auto rep = pairing_as_representation(w);
    CHECK(end_algebra(rep).dimension() == pairing_end(w).dimension());
  }
}
