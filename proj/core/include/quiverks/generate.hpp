#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "quiverks/pairing.hpp"
#include "quiverks/poly.hpp"
#include "quiverks/rep.hpp"
#include "quiverks/rng.hpp"

namespace qks {

/// Random quiver on 1..max_vertices vertices ("v0", ...) with
/// 0..max_arrows arrows ("a0", ...); loops and parallel arrows allowed.
inline Quiver random_quiver(Rng& rng, std::size_t max_vertices, std::size_t max_arrows) {
  Quiver q;
  std::size_t nv = 1 + rng.uniform(max_vertices);
  for (std::size_t v = 0; v < nv; ++v) q.add_vertex("v" + std::to_string(v));
  std::size_t na = rng.uniform(max_arrows + 1);
  for (std::size_t a = 0; a < na; ++a) q.add_arrow("a" + std::to_string(a), rng.uniform(nv), rng.uniform(nv));
  return q;
}

inline Realization random_realization(const Quiver& q, Rng& rng, std::size_t max_twist) {
  Realization r = Realization::trivial(q);
  for (auto& tw : r.twists) tw = Twist{1 + rng.uniform(max_twist), 1 + rng.uniform(max_twist)};
  return r;
}

/// Dimension vector with total at most max_total and at least one nonzero entry.
inline std::vector<std::size_t> random_dims(std::size_t vertices, std::size_t max_total, Rng& rng) {
  std::vector<std::size_t> d(vertices, 0);
  std::size_t total = 1 + rng.uniform(max_total);
  for (std::size_t k = 0; k < total; ++k) ++d[rng.uniform(vertices)];
  return d;
}

/// Roots in the base field of a polynomial (all of them over F_p, rational
/// ones over Q).
template <ExactField K>
std::vector<typename K::value_type> field_roots(const Poly<K>& p, Rng& rng) {
  std::vector<typename K::value_type> roots;
  if (p.degree() <= 0) return roots;
  if constexpr (is_prime_field_v<K>) {
    for (const auto& f : factor(p, rng))
      if (f.poly.degree() == 1) roots.push_back(p.field().neg(f.poly.coeff(0)));
  } else {
    for (auto& r : rational_roots(p)) roots.push_back(r);
  }
  return roots;
}

/// Random endomorphism sampled from the Hom basis, shifted by an eigenvalue
/// of one component when one exists so that it is typically neither
/// invertible nor nilpotent.
template <ExactField K>
Morphism<K> random_singular_endomorphism(const Representation<K>& rho, Rng& rng) {
  auto hom = hom_space(rho, rho);
  auto t = random_morphism(hom, rng);
  std::vector<std::size_t> live;
  for (std::size_t v = 0; v < rho.dims.size(); ++v)
    if (rho.dims[v] > 0) live.push_back(v);
  if (live.empty()) return t;
  std::size_t v = live[rng.uniform(live.size())];
  auto roots = field_roots(min_poly(t.components[v]), rng);
  if (roots.empty()) return t;
  const auto& lambda = roots[rng.uniform(roots.size())];
  return subtract(t, scale(lambda, identity_morphism(rho)));
}

template <ExactField K>
Representation<K> random_representation(const Quiver& q, const Realization& real, const std::vector<std::size_t>& dims,
                                         const K& field, Rng& rng) {
  if constexpr (is_prime_field_v<K>)
    return random_rep(q, real, dims, field, rng);
  else
    return random_rational_rep(q, real, dims, rng);
}

template <ExactField K>
Pairing<K> random_pairing(const K& field, std::size_t dim_a, std::size_t dim_b, std::size_t dim_m, Rng& rng) {
  std::vector<Matrix<K>> g;
  for (std::size_t k = 0; k < dim_m; ++k) g.push_back(Matrix<K>::random(field, dim_a, dim_b, rng));
  return Pairing<K>::make(field, dim_a, dim_b, dim_m, std::move(g));
}

/// Random pairing that tends to decompose: an orthogonal sum of small random
/// blocks, hidden by random invertible base changes on both sides.
template <ExactField K>
Pairing<K> random_decomposable_pairing(const K& field, std::size_t max_a, std::size_t max_b, std::size_t dim_m,
                                       Rng& rng) {
  auto acc = Pairing<K>::zero(field, 0, 0, dim_m);
  std::size_t blocks = 1 + rng.uniform(3);
  for (std::size_t i = 0; i < blocks; ++i) {
    std::size_t a = std::min<std::size_t>(rng.uniform(3), max_a - acc.dim_a);
    std::size_t b = std::min<std::size_t>(rng.uniform(3), max_b - acc.dim_b);
    if (a + b == 0) continue;
    acc = orthogonal_sum(acc, random_pairing(field, a, b, dim_m, rng));
  }
  auto invertible = [&](std::size_t n) {
    while (true) {
      auto m = Matrix<K>::random(field, n, n, rng);
      if (is_invertible_matrix(m)) return m;
    }
  };
  auto p = invertible(acc.dim_a);
  auto q = invertible(acc.dim_b);
  for (auto& g : acc.grams) g = p.transpose() * g * q;
  return acc;
}

/// g rho g^{-1}: conjugates every arrow map by invertible vertex matrices.
template <ExactField K>
Representation<K> conjugate(const Representation<K>& rho, const Morphism<K>& g) {
  auto out = rho;
  auto ginv = inverse_morphism(g);
  for (std::size_t a = 0; a < rho.quiver.arrow_count(); ++a) {
    const auto& arr = rho.quiver.arrow(a);
    const auto& tw = rho.realization.twists[a];
    out.maps[a] = twist(g.components[arr.target], tw.t) * rho.maps[a] * twist(ginv.components[arr.source], tw.s);
  }
  return out;
}

template <ExactField K>
Morphism<K> random_vertex_automorphism(const Representation<K>& rho, Rng& rng) {
  Morphism<K> g;
  for (auto d : rho.dims) {
    while (true) {
      auto m = Matrix<K>::random(rho.field, d, d, rng);
      if (is_invertible_matrix(m)) {
        g.components.push_back(std::move(m));
        break;
      }
    }
  }
  return g;
}

}  // namespace qks
