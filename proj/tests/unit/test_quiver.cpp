#include "doctest.h"
#include <functional>
#include "fixtures.hpp"
#include "quiverks/quiver.hpp"
#include "quiverks/rep.hpp"

using namespace qks;
using fixtures::mat;

namespace {

Errc code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvariantViolation;
}

FiniteCategory idempotent_category() {
  FiniteCategory c;
  c.objects = {"o"};
  c.morphisms = {{"id", "o", "o", true}, {"m", "o", "o", false}};
  c.compose = {{{"id", "id"}, "id"}, {{"id", "m"}, "m"}, {{"m", "id"}, "m"}, {{"m", "m"}, "m"}};
  return c;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate({{"v"}, {}}).vertex_count() == 1);
  CHECK(code_of([] { validate({{"u"}, {{"a", "u", "w"}}}); }) == Errc::DanglingArrow);
  auto q = validate({{"u", "v"}, {{"a", "u", "v"}, {"b", "u", "v"}}});
  CHECK(q.arrow_count() == 2);
  CHECK(code_of([] { validate({{"u", "u"}, {}}); }) == Errc::DuplicateId);
  CHECK(code_of([] { validate({{"u"}, {{"a", "u", "u"}, {"a", "u", "u"}}}); }) == Errc::DuplicateId);
  CHECK(code_of([] { validate({{}, {}}); }) == Errc::EmptyQuiver);
  CHECK(q.vertex_index("v") == 1u);
  CHECK(!q.arrow_index("c").has_value());
}

TEST_CASE("paths") {
  auto q = Quiver::make({"x", "y", "z"}, {{"a", "x", "y"}, {"b", "y", "z"}});
  Path p{0, {0, 1}};
  CHECK(p.target(q) == 2);
  CHECK(concat(q, Path{0, {0}}, Path{1, {1}}) == p);
  CHECK(code_of([&] { check_path(q, Path{0, {1}}); }) == Errc::InvalidPath);
  CHECK(code_of([&] { check_relations_wellformed(q, {{Path{0, {0}}, Path::trivial(0)}}); }) == Errc::InvalidPath);
}

TEST_CASE("compose_path examples") {
  PrimeField f(5);
  auto q = Quiver::make({"x", "y", "z"}, {{"a", "x", "y"}, {"b", "y", "z"}});
  auto r = Representation<PrimeField>::make(f, q, Realization::trivial(q), {2, 1, 2},
                                            {mat(f, {{1, 0}}), mat(f, {{2}, {0}})});
  CHECK(compose_path(r, Path::trivial(0)) == Matrix<PrimeField>::identity(f, 2));
  auto r3 = Representation<PrimeField>::zero_maps(f, q, Realization::trivial(q), {3, 0, 0});
  CHECK(compose_path(r3, Path::trivial(0)) == Matrix<PrimeField>::identity(f, 3));
  CHECK(compose_path(r, Path{0, {0}}) == mat(f, {{1, 0}}));
  CHECK(compose_path(r, Path{0, {0, 1}}) == mat(f, {{2, 0}, {0, 0}}));

  Realization tw{{Twist{2, 1}, Twist{1, 1}}};
  auto rt = Representation<PrimeField>::zero_maps(f, q, tw, {1, 1, 1});
  CHECK(code_of([&] { compose_path(rt, Path{0, {0}}); }) == Errc::TwistedRealization);
}

TEST_CASE("compose_path is functorial on concatenation") {
  PrimeField f(101);
  Rng rng(8);
  auto q = Quiver::make({"x", "y", "z"}, {{"a", "x", "y"}, {"b", "y", "z"}, {"c", "z", "x"}});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> dims{rng.uniform(4), rng.uniform(4), rng.uniform(4)};
    auto r = random_rep(q, Realization::trivial(q), dims, f, rng);
    Path p{0, {0, 1}}, s{2, {2, 0}};
    CHECK(compose_path(r, concat(q, p, s)) == compose_path(r, s) * compose_path(r, p));
  }
}

TEST_CASE("category_to_quiver examples") {
  FiniteCategory one;
  one.objects = {"o"};
  one.morphisms = {{"id", "o", "o", true}};
  one.compose = {{{"id", "id"}, "id"}};
  auto r1 = category_to_quiver(one);
  CHECK(r1.quiver.vertex_count() == 1);
  CHECK(r1.quiver.arrow_count() == 0);
  CHECK(r1.relations.empty());

  auto r2 = category_to_quiver(idempotent_category());
  REQUIRE(r2.quiver.arrow_count() == 1);
  REQUIRE(r2.relations.size() == 1);
  CHECK(r2.relations[0].lhs == Path{0, {0, 0}});
  CHECK(r2.relations[0].rhs == Path{0, {0}});

  FiniteCategory a2;
  a2.objects = {"x", "y"};
  a2.morphisms = {{"1x", "x", "x", true}, {"1y", "y", "y", true}, {"g", "x", "y", false}};
  a2.compose = {{{"1x", "1x"}, "1x"}, {{"1y", "1y"}, "1y"}, {{"g", "1x"}, "g"}, {{"1y", "g"}, "g"}};
  auto r3 = category_to_quiver(a2);
  CHECK(r3.quiver.vertex_count() == 2);
  CHECK(r3.quiver.arrow_count() == 1);
  CHECK(r3.relations.empty());
  CHECK(r3.morphism_paths.at("1x") == Path::trivial(0));
}

TEST_CASE("category_to_quiver rejects incoherent tables") {
  auto missing = idempotent_category();
  missing.compose.erase({"m", "m"});
  CHECK(code_of([&] { category_to_quiver(missing); }) == Errc::IncoherentTable);

  auto bad_id = idempotent_category();
  bad_id.compose[{"id", "m"}] = "id";
  CHECK(code_of([&] { category_to_quiver(bad_id); }) == Errc::IncoherentTable);

  FiniteCategory nonassoc;
  nonassoc.objects = {"o"};
  nonassoc.morphisms = {{"id", "o", "o", true}, {"m", "o", "o", false}, {"n", "o", "o", false}};
  nonassoc.compose = {{{"id", "id"}, "id"}, {{"id", "m"}, "m"}, {{"m", "id"}, "m"}, {{"id", "n"}, "n"},
                      {{"n", "id"}, "n"},   {{"m", "m"}, "n"},  {{"n", "n"}, "n"},  {{"m", "n"}, "m"},
                      {{"n", "m"}, "n"}};
  // (m o n) o m = m o m = n, but m o (n o m) = m o n = m.
  CHECK(code_of([&] { category_to_quiver(nonassoc); }) == Errc::IncoherentTable);
}

TEST_CASE("full subquiver keeps relations on kept arrows") {
  auto q = Quiver::make({"x", "y", "z"}, {{"a", "x", "y"}, {"b", "y", "z"}, {"c", "x", "z"}});
  PathRelations rels{{Path{0, {0, 1}}, Path{0, {2}}}};
  auto sub = full_subquiver(q, rels, {0, 2});
  CHECK(sub.quiver.vertex_count() == 2);
  CHECK(sub.quiver.arrow_count() == 1);
  CHECK(sub.relations.empty());
  CHECK(sub.arrow_map == std::vector<std::size_t>{2});
  auto whole = full_subquiver(q, rels, {0, 1, 2});
  CHECK(whole.relations.size() == 1);
}
