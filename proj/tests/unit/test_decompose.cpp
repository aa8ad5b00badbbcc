#include "doctest.h"
#include "fixtures.hpp"
#include "quiverks/decompose.hpp"
#include "quiverks/generate.hpp"

using namespace qks;
using fixtures::mat;
using M = Matrix<PrimeField>;
using R = Representation<PrimeField>;

namespace {

std::vector<std::vector<std::size_t>> summand_dims(const Decomposition<PrimeField>& d) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : d.summands)
    for (std::size_t k = 0; k < s.multiplicity; ++k) out.push_back(s.rep.dims);
  return out;
}

void check_witnesses(const Decomposition<PrimeField>& d) {
  const auto& rho = d.original;
  auto total = zero_morphism(rho, rho);
  for (const auto& s : d.summands) {
    CHECK(s.witnesses.size() == s.multiplicity);
    for (const auto& w : s.witnesses) {
      CHECK(is_morphism(s.rep, rho, w.inclusion));
      CHECK(is_morphism(rho, s.rep, w.projection));
      CHECK(compose(w.projection, w.inclusion) == identity_morphism(s.rep));
      total = add(total, compose(w.inclusion, w.projection));
    }
  }
  CHECK(total == identity_morphism(rho));
}

}  // namespace

TEST_CASE("krull_schmidt on the rank-one A2 representation") {
  PrimeField f(101);
  auto rho = fixtures::a2_rep(f, 2, 2, mat(f, {{1, 0}, {0, 0}}));
  Rng rng(1);
  auto d = krull_schmidt(rho, rng);
  CHECK(d.certainty == Certainty::Proven);
  REQUIRE(d.summands.size() == 3);
  CHECK(d.summands[0].rep.dims == std::vector<std::size_t>{0, 1});
  CHECK(d.summands[1].rep.dims == std::vector<std::size_t>{1, 0});
  CHECK(d.summands[2].rep.dims == std::vector<std::size_t>{1, 1});
  CHECK(d.summands[2].rep.maps[0] == mat(f, {{1}}));
  for (const auto& s : d.summands) CHECK(s.multiplicity == 1);
  check_witnesses(d);
  auto w = reassembly_witness(d);
  CHECK(is_isomorphism(w.forward));
}

TEST_CASE("krull_schmidt on a Jordan loop") {
  PrimeField f(101);
  auto rho = fixtures::loop_rep(fixtures::diag_blocks({fixtures::jordan(f, 2, 1), fixtures::jordan(f, 3, 2)}));
  Rng rng(1);
  auto d = krull_schmidt(rho, rng);
  CHECK(summand_dims(d) == std::vector<std::vector<std::size_t>>{{2}, {3}});
  CHECK(min_poly(d.summands[0].rep.maps[0]) == Poly<PrimeField>::from_ints(f, {1, -2, 1}));
  check_witnesses(d);
}

TEST_CASE("krull_schmidt groups isomorphic copies") {
  PrimeField f(101);
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto q = random_quiver(rng, 3, 3);
    auto real = random_realization(q, rng, 2);
    auto sigma = random_rep(q, real, random_dims(q.vertex_count(), 4, rng), f, rng);
    auto ds = krull_schmidt(sigma, rng);
    auto d = krull_schmidt(direct_sum(sigma, sigma).sum, rng);
    REQUIRE(d.summands.size() == ds.summands.size());
    for (std::size_t i = 0; i < d.summands.size(); ++i) CHECK(d.summands[i].multiplicity == 2 * ds.summands[i].multiplicity);
    check_witnesses(d);
    if (ds.total_copies() == 1) CHECK(d.summands.front().multiplicity == 2);
  }
}

TEST_CASE("krull_schmidt on the zero representation") {
  PrimeField f(7);
  auto q = fixtures::a2_quiver();
  Rng rng(1);
  auto d = krull_schmidt(R::zero_maps(f, q, Realization::trivial(q), {0, 0}), rng);
  CHECK(d.summands.empty());
  CHECK(reassemble(d).is_zero_object());
}

TEST_CASE("krull_schmidt rejects relation violations") {
  PrimeField f(5);
  auto rho = fixtures::loop_rep(mat(f, {{2}}));
  Rng rng(1);
  try {
    krull_schmidt(rho, rng, {{Path{0, {0, 0}}, Path{0, {0}}}});
    FAIL("expected RelationViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RelationViolation);
  }
}

TEST_CASE("krull_schmidt over the rationals") {
  RationalField q;
  auto quiver = fixtures::a2_quiver();
  auto m = Matrix<RationalField>::from_ints(q, {{1, 0}, {0, 0}});
  auto rho = Representation<RationalField>::make(q, quiver, Realization::trivial(quiver), {2, 2}, {m});
  Rng rng(1);
  auto d = krull_schmidt(rho, rng);
  CHECK(d.total_copies() == 3);
  CHECK(d.certainty == Certainty::Proven);
  reassembly_witness(d);
}

TEST_CASE("is_isomorphic examples") {
  PrimeField f(5);
  Rng rng(1);
  auto j = fixtures::loop_rep(fixtures::jordan(f, 2, 3));
  auto self = is_isomorphic(j, j, rng);
  REQUIRE(self.has_value());
  CHECK(self->forward == identity_morphism(j));

  CHECK(!is_isomorphic(fixtures::loop_rep(mat(f, {{1}})), fixtures::loop_rep(mat(f, {{2}})), rng).has_value());

  Morphism<PrimeField> g{{mat(f, {{1, 2}, {3, 4}})}};
  auto conj = conjugate(j, g);
  CHECK(!(conj == j));
  auto w = is_isomorphic(j, conj, rng);
  REQUIRE(w.has_value());
  CHECK(is_morphism(j, conj, w->forward));
  CHECK(compose(w->inverse, w->forward) == identity_morphism(j));
  // Hom(J_2, conj) is 2-dimensional, so the witness is g up to an automorphism of J_2.
  auto ratio = compose(inverse_morphism(g), w->forward);
  CHECK(is_morphism(j, j, ratio));

  auto q = fixtures::a2_quiver();
  CHECK(!is_isomorphic(R::zero_maps(f, q, Realization::trivial(q), {1, 0}),
                       R::zero_maps(f, q, Realization::trivial(q), {0, 1}), rng)
             .has_value());
}

TEST_CASE("is_isomorphic finds conjugates of random representations") {
  PrimeField f(101);
  Rng rng(19);
  for (int trial = 0; trial < 15; ++trial) {
    auto q = random_quiver(rng, 3, 3);
    auto real = rng.coin() ? random_realization(q, rng, 2) : Realization::trivial(q);
    auto rho = random_rep(q, real, random_dims(q.vertex_count(), 5, rng), f, rng);
    auto other = conjugate(rho, random_vertex_automorphism(rho, rng));
    auto w = is_isomorphic(rho, other, rng);
    REQUIRE(w.has_value());
    CHECK(is_morphism(rho, other, w->forward));
    CHECK(compose(w->forward, w->inverse) == identity_morphism(other));
  }
}

TEST_CASE("verify_uniqueness examples") {
  PrimeField f(101);
  auto rho = fixtures::a2_rep(f, 2, 2, mat(f, {{1, 0}, {0, 0}}));
  Rng r1(1), r2(2);
  auto d1 = krull_schmidt(rho, r1);
  auto self = verify_uniqueness(d1, d1);
  CHECK(self.matched);
  CHECK(self.matching == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}, {2, 2}});

  auto d2 = krull_schmidt(rho, r2);
  CHECK(verify_uniqueness(d1, d2).matched);

  Rng r3(3);
  auto other = krull_schmidt(fixtures::a2_rep(f, 2, 2, mat(f, {{1, 0}, {0, 1}})), r3);
  try {
    verify_uniqueness(d1, other);
    FAIL("expected PreconditionViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionViolation);
  }
}

TEST_CASE("cancellation examples") {
  PrimeField f(101);
  Rng rng(6);
  auto q = Quiver::make({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}});
  auto real = Realization::trivial(q);
  auto x = random_rep(q, real, {2, 1}, f, rng);
  auto y = random_rep(q, real, {1, 2}, f, rng);

  auto same = cancellation_check(x, y, y, rng);
  CHECK(same.hypothesis);
  CHECK(same.conclusion);
  CHECK(same.consistent());

  auto z = conjugate(y, random_vertex_automorphism(y, rng));
  auto conj = cancellation_check(x, y, z, rng);
  CHECK(conj.hypothesis);
  CHECK(conj.conclusion);
  REQUIRE(conj.witness.has_value());
  CHECK(is_morphism(y, z, conj.witness->forward));

  auto w = random_rep(q, real, {2, 2}, f, rng);
  auto diff = cancellation_check(x, y, w, rng);
  CHECK_FALSE(diff.hypothesis);
  CHECK_FALSE(diff.conclusion);
  CHECK(diff.consistent());
}
