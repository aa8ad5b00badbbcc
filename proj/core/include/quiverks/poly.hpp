#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "quiverks/matrix.hpp"

namespace qks {

/// Univariate polynomial, coefficients lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
template <ExactField K>
class Poly {
 public:
  using value_type = typename K::value_type;

  explicit Poly(K field) : field_(std::move(field)) {}
  Poly(K field, std::vector<value_type> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const K& f, value_type c) { return Poly(f, {std::move(c)}); }
  static Poly x(const K& f) { return Poly(f, {f.zero(), f.one()}); }
  static Poly monomial(const K& f, std::size_t degree, value_type c) {
    std::vector<value_type> v(degree + 1, f.zero());
    v[degree] = std::move(c);
    return Poly(f, std::move(v));
  }
  static Poly from_ints(const K& f, std::initializer_list<std::int64_t> coeffs) {
    std::vector<value_type> v;
    for (auto c : coeffs) v.push_back(f.from_int(c));
    return Poly(f, std::move(v));
  }

  const K& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<value_type>& coeffs() const noexcept { return c_; }
  value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  value_type lead() const { return c_.empty() ? field_.zero() : c_.back(); }
  bool is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }
  bool is_constant() const noexcept { return c_.size() <= 1; }

  Poly monic() const {
    if (c_.empty()) return *this;
    auto inv = field_.inv(c_.back());
    Poly r = *this;
    for (auto& x : r.c_) x = field_.mul(inv, x);
    return r;
  }

  Poly derivative() const {
    std::vector<value_type> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
      d.push_back(field_.mul(field_.from_int(static_cast<std::int64_t>(i)), c_[i]));
    return Poly(field_, std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const K& f = a.field_;
    std::vector<value_type> r(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(r));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    const K& f = a.field_;
    std::vector<value_type> r(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(r));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    const K& f = a.field_;
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<value_type> r(a.c_.size() + b.c_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (f.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(r));
  }

  Poly scaled(const value_type& s) const {
    Poly r = *this;
    for (auto& x : r.c_) x = field_.mul(s, x);
    r.trim();
    return r;
  }

  /// Euclidean division: returns (q, r) with a = q b + r and deg r < deg b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    const K& f = a.field_;
    if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<value_type> rem = a.c_;
    std::vector<value_type> q(a.c_.size() - b.c_.size() + 1, f.zero());
    auto inv_lead = f.inv(b.c_.back());
    for (std::size_t k = q.size(); k-- > 0;) {
      auto c = f.mul(rem[k + b.c_.size() - 1], inv_lead);
      q[k] = c;
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] = f.sub(rem[k + j], f.mul(c, b.c_[j]));
    }
    rem.resize(b.c_.size() - 1);
    return {Poly(f, std::move(q)), Poly(f, std::move(rem))};
  }

  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!a.field_.equal(a.c_[i], b.c_[i])) return false;
    return true;
  }

  value_type evaluate(const value_type& x) const {
    auto acc = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (field_.is_zero(c_[i])) continue;
      if (!s.empty()) s += " + ";
      bool unit = field_.is_one(c_[i]) && i > 0;
      if (!unit) s += field_.to_string(c_[i]);
      if (i > 0) s += unit ? "x" : "*x";
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  K field_;
  std::vector<value_type> c_;
};

template <ExactField K>
struct ExtendedGcd {
  Poly<K> g;
  Poly<K> s;
  Poly<K> t;
};

/// Extended Euclid: s a + t b = g with g monic (or zero when a = b = 0).
/// Equal arguments return (a, 0, 1) after normalisation.
template <ExactField K>
ExtendedGcd<K> poly_extended_gcd(const Poly<K>& a, const Poly<K>& b) {
  const K& f = a.field();
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = Poly<K>::constant(f, f.one()), s1(f);
  Poly<K> t0(f), t1 = Poly<K>::constant(f, f.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly<K> s2 = s0 - q * s1;
    Poly<K> t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto inv = f.inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <ExactField K>
Poly<K> poly_gcd(const Poly<K>& a, const Poly<K>& b) {
  return poly_extended_gcd(a, b).g;
}

/// base^e mod m.
template <ExactField K>
Poly<K> pow_mod(Poly<K> base, std::uint64_t e, const Poly<K>& m) {
  const K& f = base.field();
  Poly<K> r = Poly<K>::constant(f, f.one()) % m;
  base = base % m;
  while (e != 0) {
    if (e & 1) r = (r * base) % m;
    e >>= 1;
    if (e != 0) base = (base * base) % m;
  }
  return r;
}

/// Evaluates p at a square matrix by Horner's rule.
template <ExactField K>
Matrix<K> evaluate(const Poly<K>& p, const Matrix<K>& m) {
  const K& f = m.field();
  std::size_t n = m.rows();
  Matrix<K> acc(f, n, n);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t d = 0; d < n; ++d) acc(d, d) = f.add(acc(d, d), p.coeffs()[i]);
  }
  return acc;
}

/// Monic polynomial of least degree annihilating the sequence generated by
/// `step` from `one`: the first k with step^k(one) in the span of the earlier
/// iterates determines x^k - sum c_j x^j.
template <ExactField K, class Step>
Poly<K> minimal_polynomial_of_sequence(const K& f, std::vector<typename K::value_type> one, Step step) {
  DependencyFinder<K> finder(f);
  std::vector<typename K::value_type> current = std::move(one);
  for (std::size_t k = 0;; ++k) {
    auto next = step(current);
    if (auto rel = finder.insert(current)) {
      std::vector<typename K::value_type> coeffs(k + 1, f.zero());
      for (std::size_t j = 0; j < k; ++j) coeffs[j] = f.neg((*rel)[j]);
      coeffs[k] = f.one();
      return Poly<K>(f, std::move(coeffs));
    }
    current = std::move(next);
  }
}

/// Minimal polynomial of a square matrix. A 0 x 0 matrix gives 1.
template <ExactField K>
Poly<K> min_poly(const Matrix<K>& m) {
  if (!m.is_square()) throw Error(Errc::ShapeError, "min_poly needs a square matrix");
  const K& f = m.field();
  auto id = Matrix<K>::identity(f, m.rows());
  std::vector<typename K::value_type> one(id.data().begin(), id.data().end());
  std::size_t n = m.rows();
  return minimal_polynomial_of_sequence(f, std::move(one), [&](const std::vector<typename K::value_type>& v) {
    Matrix<K> cur(f, n, n, v);
    auto nxt = cur * m;
    return std::vector<typename K::value_type>(nxt.data().begin(), nxt.data().end());
  });
}

template <ExactField K>
struct Factor {
  Poly<K> poly;
  std::size_t multiplicity = 1;
};

namespace detail {

/// Squarefree decomposition over F_p: returns (g_i, i) with p = prod g_i^i (monic input).
inline std::vector<Factor<PrimeField>> squarefree_parts(const Poly<PrimeField>& input) {
  using P = Poly<PrimeField>;
  const PrimeField& f = input.field();
  const std::uint64_t p = f.modulus();
  std::vector<Factor<PrimeField>> out;
  if (input.degree() <= 0) return out;
  P d = input.derivative();
  if (d.is_zero()) {
    // input(x) = g(x^p), and over F_p the coefficients are their own p-th roots.
    std::vector<PrimeField::value_type> root;
    for (std::size_t i = 0; i < input.coeffs().size(); i += p) root.push_back(input.coeffs()[i]);
    for (auto& part : squarefree_parts(P(f, std::move(root)))) out.push_back({part.poly, part.multiplicity * p});
    return out;
  }
  // Yun's algorithm, with the characteristic-p remainder handled recursively.
  P c = poly_gcd(input, d);
  P w = input / c;
  std::size_t i = 1;
  while (w.degree() > 0) {
    P y = poly_gcd(w, c);
    P z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c = h(x^p)
    std::vector<PrimeField::value_type> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
    for (auto& part : squarefree_parts(P(f, std::move(root)).monic())) out.push_back({part.poly, part.multiplicity * p});
  }
  return out;
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
inline std::vector<std::pair<Poly<PrimeField>, std::size_t>> distinct_degree(Poly<PrimeField> g) {
  using P = Poly<PrimeField>;
  const PrimeField& f = g.field();
  std::vector<std::pair<P, std::size_t>> out;
  P x = P::x(f);
  P h = x % g;
  for (std::size_t d = 1; 2 * d <= static_cast<std::size_t>(g.degree()); ++d) {
    h = pow_mod(h, f.modulus(), g);
    P common = poly_gcd(g, h - x);
    if (common.degree() > 0) {
      out.emplace_back(common, d);
      g = g / common;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<std::size_t>(g.degree()));
  return out;
}

/// Cantor-Zassenhaus splitting of a monic product of distinct irreducibles of degree d.
inline void equal_degree(const Poly<PrimeField>& g, std::size_t d, Rng& rng, std::vector<Poly<PrimeField>>& out) {
  using P = Poly<PrimeField>;
  const PrimeField& f = g.field();
  const std::uint64_t p = f.modulus();
  if (static_cast<std::size_t>(g.degree()) == d) {
    out.push_back(g.monic());
    return;
  }
  const std::size_t n = static_cast<std::size_t>(g.degree());
  for (;;) {
    std::vector<PrimeField::value_type> coeffs(n);
    for (auto& c : coeffs) c = random_element(f, rng);
    P a(f, std::move(coeffs));
    if (a.degree() <= 0) continue;
    P probe(f);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(kd-1)) with kd = deg g... a^(2^i) for i < d suffices per factor.
      P term = a % g;
      probe = term;
      for (std::size_t i = 1; i < d; ++i) {
        term = (term * term) % g;
        probe = probe + term;
      }
    } else {
      // a^((p^d - 1)/2) = N(a)^((p-1)/2) with N(a) = a * a^p * ... * a^(p^(d-1)).
      P frob = a % g;
      P norm = frob;
      for (std::size_t i = 1; i < d; ++i) {
        frob = pow_mod(frob, p, g);
        norm = (norm * frob) % g;
      }
      probe = pow_mod(norm, (p - 1) / 2, g) - P::constant(f, f.one());
    }
    P split = poly_gcd(g, probe);
    if (split.degree() > 0 && split.degree() < g.degree()) {
      equal_degree(split, d, rng, out);
      equal_degree(g / split, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factorisation into monic irreducibles with multiplicities over F_p:
/// squarefree split, distinct-degree split, then randomized equal-degree
/// split driven by `rng`. The result is sorted by (degree, coefficients).
template <ExactField K>
std::vector<Factor<K>> factor(const Poly<K>& p, Rng& rng) {
  if constexpr (!is_prime_field_v<K>) {
    (void)p;
    (void)rng;
    throw Error(Errc::UnsupportedField, "polynomial factorisation over Q is not supported");
  } else {
    if (p.is_zero()) throw Error(Errc::InvalidArgument, "cannot factor the zero polynomial");
    std::vector<Factor<K>> out;
    for (const auto& part : detail::squarefree_parts(p.monic())) {
      for (const auto& [block, d] : detail::distinct_degree(part.poly)) {
        std::vector<Poly<K>> pieces;
        detail::equal_degree(block, d, rng, pieces);
        for (auto& piece : pieces) out.push_back({std::move(piece), part.multiplicity});
      }
    }
    std::sort(out.begin(), out.end(), [](const Factor<K>& a, const Factor<K>& b) {
      if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
      const auto& ca = a.poly.coeffs();
      const auto& cb = b.poly.coeffs();
      for (std::size_t i = ca.size(); i-- > 0;)
        if (ca[i] != cb[i]) return ca[i] < cb[i];
      return a.multiplicity < b.multiplicity;
    });
    // Squarefree parts of different multiplicity are coprime, so no merging is needed.
    return out;
  }
}

/// Rational roots of a polynomial over Q with small coefficients, via the
/// rational root test. Returns an empty list when the integer coefficients
/// are too large to enumerate divisors of.
std::vector<mpq_class> rational_roots(const Poly<RationalField>& p);

}  // namespace qks
