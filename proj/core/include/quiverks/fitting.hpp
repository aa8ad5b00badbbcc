#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "quiverks/algebra.hpp"
#include "quiverks/rep.hpp"

namespace qks {

/// rho = rho0 (+) rho1 with t = i0 t0 p0 + i1 t1 p1, t1 invertible and t0
/// nilpotent. `e` is the idempotent onto the rho1 part.
template <ExactField K>
struct FittingSplit {
  Morphism<K> e;
  Representation<K> rho0, rho1;
  Morphism<K> t0, t1;
  Morphism<K> i0, p0, i1, p1;
  /// Least k with t0^k = 0 (0 when rho0 is zero).
  std::size_t nilpotency_index = 0;
};

/// Least k >= 0 with t^k = 0, or nullopt if t is not nilpotent.
template <ExactField K>
std::optional<std::size_t> morphism_nilpotency(const Representation<K>& r, const Morphism<K>& t) {
  std::size_t n = r.total_dimension();
  auto power = identity_morphism(r);
  for (std::size_t k = 0; k <= n; ++k) {
    bool zero = true;
    for (const auto& c : power.components) zero = zero && c.is_zero();
    if (zero) return k;
    power = compose(t, power);
  }
  return std::nullopt;
}

/// Fitting decomposition of an endomorphism through its associated
/// idempotent in End(rho). The idempotent is a polynomial in t, so it is an
/// endomorphism of rho and both pieces are subrepresentations.
template <ExactField K>
FittingSplit<K> fitting_split(const Representation<K>& rho, const Morphism<K>& t) {
  if (!is_morphism(rho, rho, t)) throw Error(Errc::NotEndomorphism, "t is not an endomorphism of the representation");
  Morphism<K> e = t;
  if (!rho.is_zero_object()) {
    auto A = end_algebra(rho);
    auto a = A.coordinates(t.components);
    ensure(a.has_value(), "endomorphism missing from End");
    e = to_morphism(A, associated_idempotent(A, *a));
  }
  auto s1 = split_idempotent(rho, e);
  auto s0 = split_idempotent(rho, subtract(identity_morphism(rho), e));
  auto t1 = compose(s1.projection, compose(t, s1.inclusion));
  auto t0 = compose(s0.projection, compose(t, s0.inclusion));
  FittingSplit<K> out{std::move(e),           std::move(s0.rep),        std::move(s1.rep),
                      std::move(t0),          std::move(t1),            std::move(s0.inclusion),
                      std::move(s0.projection), std::move(s1.inclusion), std::move(s1.projection), 0};

  ensure(compose(out.e, t) == compose(t, out.e), "associated idempotent does not commute with t");
  ensure(add(compose(out.i0, compose(out.t0, out.p0)), compose(out.i1, compose(out.t1, out.p1))) == t,
         "t is not the sum of its Fitting parts");
  ensure(is_isomorphism(out.t1), "t1 is not invertible");
  auto idx = morphism_nilpotency(out.rho0, out.t0);
  ensure(idx.has_value(), "t0 is not nilpotent");
  out.nilpotency_index = *idx;
  return out;
}

/// Fitting decomposition of a natural transformation between functors given
/// as representations of a path-related quiver. Checks relations
/// (RelationViolation) and naturality (NotNatural) before splitting; both
/// pieces are asserted to satisfy the relations again.
template <ExactField K>
FittingSplit<K> fitting_for_functor(const Representation<K>& rho, const PathRelations& relations, const Morphism<K>& t) {
  if (!check_relations(rho, relations)) throw Error(Errc::RelationViolation, "functor violates its composition relations");
  if (!is_morphism(rho, rho, t)) throw Error(Errc::NotNatural, "t is not a natural transformation");
  auto out = fitting_split(rho, t);
  ensure(check_relations(out.rho0, relations) && check_relations(out.rho1, relations),
         "Fitting pieces lost a composition relation");
  return out;
}

struct FiniteAbelianGroup {
  /// Cyclic factor orders; Z/n_1 x ... x Z/n_r.
  std::vector<std::uint64_t> orders;

  mpz_class order() const;
  std::string to_string() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;
};

struct AbelianFitting {
  /// Part on which multiplication by k is eventually zero.
  FiniteAbelianGroup f0;
  /// Part on which multiplication by k is invertible.
  FiniteAbelianGroup f1;
};

/// Splits each Z/n as Z/n_bad x Z/n_good, n_bad collecting the primes that
/// divide k. Trivial factors are dropped and both lists are sorted.
/// Throws InvalidArgument for k = 0 or an order 0.
AbelianFitting abelian_fitting_demo(const FiniteAbelianGroup& a, std::uint64_t k);

/// True iff k^j = 0 mod n for some j.
bool multiplication_eventually_zero(std::uint64_t n, std::uint64_t k);

}  // namespace qks
