#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quiverks/matrix.hpp"
#include "quiverks/poly.hpp"
#include "quiverks/rng.hpp"

namespace qks {

/// A list of square matrices acting block-diagonally. Every algebra in this
/// library is a unital subalgebra of such a block-diagonal matrix algebra.
template <ExactField K>
using Blocks = std::vector<Matrix<K>>;

template <ExactField K>
Blocks<K> blocks_identity(const K& f, const std::vector<std::size_t>& sizes) {
  Blocks<K> out;
  for (auto n : sizes) out.push_back(Matrix<K>::identity(f, n));
  return out;
}

template <ExactField K>
Blocks<K> blocks_zero(const K& f, const std::vector<std::size_t>& sizes) {
  Blocks<K> out;
  for (auto n : sizes) out.emplace_back(f, n, n);
  return out;
}

template <ExactField K>
Blocks<K> blocks_mul(const Blocks<K>& a, const Blocks<K>& b) {
  Blocks<K> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return out;
}

template <ExactField K>
std::vector<typename K::value_type> flatten(const Blocks<K>& b) {
  std::vector<typename K::value_type> v;
  for (const auto& m : b) v.insert(v.end(), m.data().begin(), m.data().end());
  return v;
}

template <ExactField K>
Blocks<K> unflatten(const K& f, const std::vector<std::size_t>& sizes, const std::vector<typename K::value_type>& v) {
  Blocks<K> out;
  std::size_t off = 0;
  for (auto n : sizes) {
    std::vector<typename K::value_type> data(v.begin() + off, v.begin() + off + n * n);
    out.emplace_back(f, n, n, std::move(data));
    off += n * n;
  }
  return out;
}

/// Evaluates a polynomial at a block element, with `one` standing for the
/// constant term's unit (the identity, or an idempotent for corner algebras).
template <ExactField K>
Blocks<K> evaluate_blocks(const Poly<K>& p, const Blocks<K>& x, const Blocks<K>& one) {
  const K& f = p.field();
  Blocks<K> acc;
  for (const auto& m : x) acc.emplace_back(f, m.rows(), m.cols());
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = blocks_mul(acc, x);
    for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += one[b].scaled(p.coeffs()[i]);
  }
  return acc;
}

/// Minimal polynomial of a block element.
template <ExactField K>
Poly<K> min_poly_blocks(const K& f, const Blocks<K>& x) {
  std::vector<std::size_t> sizes;
  for (const auto& m : x) sizes.push_back(m.rows());
  return minimal_polynomial_of_sequence(f, flatten(blocks_identity(f, sizes)),
                                        [&](const std::vector<typename K::value_type>& v) {
                                          return flatten(blocks_mul(unflatten(f, sizes, v), x));
                                        });
}

/// Associated (Fitting) idempotent of a block element: with
/// min_poly = x^k u, u(0) != 0 and s x^k + t u = 1, returns e = s(x) x^k,
/// the projection onto the part where x acts invertibly.
template <ExactField K>
Blocks<K> associated_idempotent_blocks(const K& f, const Blocks<K>& x) {
  std::vector<std::size_t> sizes;
  for (const auto& m : x) sizes.push_back(m.rows());
  auto one = blocks_identity(f, sizes);
  Poly<K> mp = min_poly_blocks(f, x);
  std::size_t k = 0;
  while (k < mp.coeffs().size() && f.is_zero(mp.coeffs()[k])) ++k;
  Poly<K> xk = Poly<K>::monomial(f, k, f.one());
  Poly<K> u = mp / xk;
  auto eg = poly_extended_gcd(xk, u);
  ensure(eg.g.degree() == 0, "x^k and its cofactor must be coprime");
  return evaluate_blocks(eg.s * xk, x, one);
}

template <ExactField K>
struct AlgebraElement {
  std::vector<typename K::value_type> coords;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.coords == b.coords; }
};

/// Finite-dimensional unital algebra realised inside a block-diagonal
/// matrix algebra. The basis is stored row-reduced on the flattened
/// blocks, so the coordinates of any member are its entries at the pivot
/// positions. Structure constants satisfy b_i b_j = sum_k c(i,j,k) b_k.
template <ExactField K>
class EndAlgebra {
 public:
  using value_type = typename K::value_type;
  using Element = AlgebraElement<K>;

  /// Spans `spanning` (which must already be closed under products and
  /// contain the identity). Throws InvariantViolation if not closed.
  EndAlgebra(K field, std::vector<std::size_t> block_sizes, const std::vector<Blocks<K>>& spanning)
      : field_(std::move(field)), sizes_(std::move(block_sizes)) {
    flat_len_ = 0;
    for (auto n : sizes_) flat_len_ += n * n;
    Matrix<K> stacked(field_, spanning.size(), flat_len_);
    for (std::size_t i = 0; i < spanning.size(); ++i) {
      auto v = flatten(spanning[i]);
      for (std::size_t j = 0; j < flat_len_; ++j) stacked(i, j) = v[j];
    }
    auto red = rref(std::move(stacked));
    pivots_ = red.pivots;
    for (std::size_t i = 0; i < red.rank; ++i) {
      std::vector<value_type> row(red.reduced.row(i).begin(), red.reduced.row(i).end());
      basis_flat_.push_back(row);
      basis_.push_back(unflatten(field_, sizes_, row));
    }
    build_structure();
  }

  /// Smallest unital subalgebra containing the generators.
  static EndAlgebra generated_by(const K& field, std::vector<std::size_t> sizes, const std::vector<Blocks<K>>& gens) {
    std::vector<Blocks<K>> span{blocks_identity(field, sizes)};
    DependencyFinder<K> finder(field);
    std::vector<Blocks<K>> accepted;
    auto consider = [&](const Blocks<K>& b) {
      if (!finder.insert(flatten(b))) {
        accepted.push_back(b);
        return true;
      }
      return false;
    };
    consider(span.front());
    for (const auto& g : gens) consider(g);
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        consider(blocks_mul(accepted[i], accepted[j]));
        consider(blocks_mul(accepted[j], accepted[i]));
      }
    }
    return EndAlgebra(field, std::move(sizes), accepted);
  }

  const K& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<std::size_t>& block_sizes() const noexcept { return sizes_; }
  /// Dimension of the faithful module the blocks act on.
  std::size_t module_dimension() const noexcept {
    std::size_t n = 0;
    for (auto s : sizes_) n += s;
    return n;
  }
  const std::vector<Blocks<K>>& basis() const noexcept { return basis_; }
  const std::vector<std::vector<value_type>>& basis_flat() const noexcept { return basis_flat_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  const value_type& structure(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t m = dimension();
    return structure_[(i * m + j) * m + k];
  }

  const Element& identity() const noexcept { return identity_; }
  Element zero() const { return {std::vector<value_type>(dimension(), field_.zero())}; }

  Element element(std::vector<value_type> coords) const {
    if (coords.size() != dimension()) throw Error(Errc::ShapeError, "coordinate vector has the wrong length");
    return {std::move(coords)};
  }

  Element basis_element(std::size_t i) const {
    Element e = zero();
    e.coords.at(i) = field_.one();
    return e;
  }

  Blocks<K> to_blocks(const Element& x) const {
    std::vector<value_type> v(flat_len_, field_.zero());
    for (std::size_t i = 0; i < dimension(); ++i) {
      if (field_.is_zero(x.coords[i])) continue;
      for (std::size_t j = 0; j < flat_len_; ++j) v[j] = field_.add(v[j], field_.mul(x.coords[i], basis_flat_[i][j]));
    }
    return unflatten(field_, sizes_, v);
  }

  /// Coordinates of a block element, or nullopt if it is not in the algebra.
  std::optional<Element> coordinates(const Blocks<K>& b) const {
    auto v = flatten(b);
    Element e = zero();
    for (std::size_t i = 0; i < dimension(); ++i) e.coords[i] = v[pivots_[i]];
    if (flatten(to_blocks(e)) != v) return std::nullopt;
    return e;
  }

  Element from_blocks(const Blocks<K>& b) const {
    auto c = coordinates(b);
    if (!c) throw Error(Errc::InvalidArgument, "element does not lie in the algebra");
    return *c;
  }

  Element mul(const Element& a, const Element& b) const {
    auto prod = blocks_mul(to_blocks(a), to_blocks(b));
    auto v = flatten(prod);
    Element e = zero();
    for (std::size_t i = 0; i < dimension(); ++i) e.coords[i] = v[pivots_[i]];
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    Element e = a;
    for (std::size_t i = 0; i < e.coords.size(); ++i) e.coords[i] = field_.add(e.coords[i], b.coords[i]);
    return e;
  }

  Element sub(const Element& a, const Element& b) const {
    Element e = a;
    for (std::size_t i = 0; i < e.coords.size(); ++i) e.coords[i] = field_.sub(e.coords[i], b.coords[i]);
    return e;
  }

  Element scale(const value_type& c, const Element& a) const {
    Element e = a;
    for (auto& x : e.coords) x = field_.mul(c, x);
    return e;
  }

  bool is_zero(const Element& a) const {
    for (const auto& x : a.coords)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Element random_element(Rng& rng) const {
    Element e = zero();
    for (auto& x : e.coords) x = qks::random_element(field_, rng);
    return e;
  }

  /// Matrix of left multiplication by a in the basis (column j = a b_j).
  Matrix<K> left_multiplication(const Element& a) const {
    std::size_t m = dimension();
    Matrix<K> L(field_, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (field_.is_zero(a.coords[i])) continue;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) L(k, j) = field_.add(L(k, j), field_.mul(a.coords[i], structure(i, j, k)));
    }
    return L;
  }

 private:
  void build_structure() {
    std::size_t m = dimension();
    structure_.assign(m * m * m, field_.zero());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        auto v = flatten(blocks_mul(basis_[i], basis_[j]));
        Element e = zero();
        for (std::size_t k = 0; k < m; ++k) e.coords[k] = v[pivots_[k]];
        ensure(flatten(to_blocks(e)) == v, "spanning set is not closed under multiplication");
        for (std::size_t k = 0; k < m; ++k) structure_[(i * m + j) * m + k] = e.coords[k];
      }
    identity_ = zero();
    auto id = coordinates(blocks_identity(field_, sizes_));
    ensure(id.has_value(), "algebra does not contain the identity");
    identity_ = *id;
  }

  K field_;
  std::vector<std::size_t> sizes_;
  std::size_t flat_len_ = 0;
  std::vector<Blocks<K>> basis_;
  std::vector<std::vector<value_type>> basis_flat_;
  std::vector<std::size_t> pivots_;
  std::vector<value_type> structure_;
  Element identity_;
};

/// Two algebras have identical row-reduced bases (same subspace of the
/// same ambient block algebra).
template <ExactField K>
bool same_subspace(const EndAlgebra<K>& a, const EndAlgebra<K>& b) {
  return a.block_sizes() == b.block_sizes() && a.basis_flat() == b.basis_flat();
}

enum class TraceFormKind { Regular, Faithful };

template <ExactField K>
struct RadicalBasis {
  std::vector<AlgebraElement<K>> basis;
  /// Least k with J^k = 0 (1 when J = 0).
  std::size_t nilpotency_index = 1;
  TraceFormKind form = TraceFormKind::Regular;
};

/// Which trace form certifies the radical in this characteristic, if any.
template <ExactField K>
std::optional<TraceFormKind> radical_trace_form(const EndAlgebra<K>& A) {
  std::uint64_t p = A.field().characteristic();
  if (p == 0 || p > A.dimension()) return TraceFormKind::Regular;
  if (p > A.module_dimension()) return TraceFormKind::Faithful;
  return std::nullopt;
}

/// Gram matrix of the trace form T(x, y) = tr(xy) on the basis.
template <ExactField K>
Matrix<K> trace_form_gram(const EndAlgebra<K>& A, TraceFormKind kind) {
  const K& f = A.field();
  std::size_t m = A.dimension();
  Matrix<K> gram(f, m, m);
  if (kind == TraceFormKind::Regular) {
    // tr(L_{b_k}) = sum_l c(k, l, l); T(b_i, b_j) = sum_k c(i, j, k) tr(L_{b_k}).
    std::vector<typename K::value_type> tau(m, f.zero());
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) tau[k] = f.add(tau[k], A.structure(k, l, l));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) gram(i, j) = f.add(gram(i, j), f.mul(A.structure(i, j, k), tau[k]));
  } else {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        auto prod = blocks_mul(A.basis()[i], A.basis()[j]);
        auto t = f.zero();
        for (const auto& b : prod) t = f.add(t, trace(b));
        gram(i, j) = t;
      }
  }
  return gram;
}

/// Jacobson radical as the kernel of the trace form. Uses the regular trace
/// when the characteristic is 0 or exceeds dim A, otherwise the trace on the
/// faithful block module when the characteristic exceeds its dimension.
/// Throws SmallCharacteristic when neither criterion applies.
template <ExactField K>
RadicalBasis<K> jacobson_radical(const EndAlgebra<K>& A) {
  const K& f = A.field();
  auto kind = radical_trace_form(A);
  if (!kind)
    throw Error(Errc::SmallCharacteristic, "characteristic " + std::to_string(f.characteristic()) +
                                               " is too small for an algebra of dimension " +
                                               std::to_string(A.dimension()));
  RadicalBasis<K> out;
  out.form = *kind;
  auto ker = nullspace(trace_form_gram(A, *kind));
  auto reduced = row_space_basis(ker.transpose());
  for (std::size_t i = 0; i < reduced.rows(); ++i)
    out.basis.push_back(A.element({reduced.row(i).begin(), reduced.row(i).end()}));

  // Powers J^k until they vanish.
  std::size_t index = 1;
  std::vector<AlgebraElement<K>> power = out.basis;
  while (!power.empty()) {
    ++index;
    Matrix<K> prods(f, power.size() * out.basis.size(), A.dimension());
    std::size_t r = 0;
    for (const auto& x : power)
      for (const auto& y : out.basis) {
        auto xy = A.mul(x, y);
        for (std::size_t k = 0; k < A.dimension(); ++k) prods(r, k) = xy.coords[k];
        ++r;
      }
    auto next = row_space_basis(prods);
    ensure(next.rows() < power.size() || power.empty(), "radical powers must strictly decrease");
    power.clear();
    for (std::size_t i = 0; i < next.rows(); ++i) power.push_back(A.element({next.row(i).begin(), next.row(i).end()}));
  }
  out.nilpotency_index = index;
  return out;
}

/// Reduction of algebra elements modulo a subspace (the radical).
template <ExactField K>
class QuotientReducer {
 public:
  QuotientReducer(const EndAlgebra<K>& A, const std::vector<AlgebraElement<K>>& sub) : field_(A.field()) {
    Matrix<K> m(field_, sub.size(), A.dimension());
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (std::size_t k = 0; k < A.dimension(); ++k) m(i, k) = sub[i].coords[k];
    auto red = rref(std::move(m));
    pivots_ = red.pivots;
    for (std::size_t i = 0; i < red.rank; ++i) rows_.emplace_back(red.reduced.row(i).begin(), red.reduced.row(i).end());
  }

  std::vector<typename K::value_type> reduce(std::vector<typename K::value_type> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto c = v[pivots_[r]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = field_.sub(v[j], field_.mul(c, rows_[r][j]));
    }
    return v;
  }

  bool contains(const AlgebraElement<K>& x) const {
    auto r = reduce(x.coords);
    for (const auto& c : r)
      if (!field_.is_zero(c)) return false;
    return true;
  }

  std::size_t dimension() const noexcept { return rows_.size(); }

 private:
  K field_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<typename K::value_type>> rows_;
};

/// Associated idempotent of a: e^2 = e, ea = ae, e lies in F[a], eae is
/// invertible in eAe and (1 - e) a is nilpotent.
template <ExactField K>
AlgebraElement<K> associated_idempotent(const EndAlgebra<K>& A, const AlgebraElement<K>& a) {
  if (A.dimension() == 0) return A.zero();
  return A.from_blocks(associated_idempotent_blocks(A.field(), A.to_blocks(a)));
}

/// Lifts an idempotent modulo J to an exact idempotent by the Newton
/// iteration e <- 3e^2 - 2e^3, run ceil(log2(index)) + 1 times.
template <ExactField K>
AlgebraElement<K> lift_idempotent(const EndAlgebra<K>& A, const RadicalBasis<K>& J, const AlgebraElement<K>& ebar) {
  const K& f = A.field();
  QuotientReducer<K> modJ(A, J.basis);
  if (!modJ.contains(A.sub(A.mul(ebar, ebar), ebar)))
    throw Error(Errc::NotIdempotentModJ, "element is not idempotent modulo the radical");
  std::size_t rounds = 1;
  for (std::size_t reach = 1; reach < J.nilpotency_index; reach *= 2) ++rounds;
  auto three = f.from_int(3), two = f.from_int(2);
  AlgebraElement<K> e = ebar;
  for (std::size_t r = 0; r < rounds; ++r) {
    auto e2 = A.mul(e, e);
    auto e3 = A.mul(e2, e);
    e = A.sub(A.scale(three, e2), A.scale(two, e3));
  }
  ensure(A.mul(e, e) == e, "Newton lifting did not reach an idempotent");
  return e;
}

/// Left-regular invertibility; returns the two-sided inverse when it exists.
template <ExactField K>
std::optional<AlgebraElement<K>> is_invertible(const EndAlgebra<K>& A, const AlgebraElement<K>& a) {
  if (A.dimension() == 0) return A.zero();
  auto L = A.left_multiplication(a);
  auto inv = inverse(L);
  if (!inv) return std::nullopt;
  // Solve a x = 1: x = L^{-1} [1].
  AlgebraElement<K> x = A.zero();
  for (std::size_t i = 0; i < A.dimension(); ++i)
    for (std::size_t j = 0; j < A.dimension(); ++j)
      x.coords[i] = A.field().add(x.coords[i], A.field().mul((*inv)(i, j), A.identity().coords[j]));
  ensure(A.mul(x, a) == A.identity(), "right inverse is not a left inverse");
  return x;
}

enum class Certainty {
  /// Every corner was certified local by a deterministic argument.
  Proven,
  /// Some corner was declared local after the Monte Carlo trial budget.
  MonteCarlo,
  /// Some corner could not be split with the available factorisation (Q).
  Uncertified,
};

std::string_view certainty_name(Certainty c) noexcept;

template <ExactField K>
struct PrimitiveIdempotents {
  std::vector<AlgebraElement<K>> idempotents;
  Certainty certainty = Certainty::Proven;
};

inline constexpr std::size_t kDivisionTrials = 64;

namespace detail {

/// Splits an irreducible-or-not polynomial into pairwise coprime parts as
/// far as the field allows. Over Q only rational linear factors are found.
template <ExactField K>
std::vector<Poly<K>> coprime_parts(const Poly<K>& q, Rng& rng) {
  std::vector<Poly<K>> parts;
  if constexpr (is_prime_field_v<K>) {
    for (auto& fac : factor(q, rng)) {
      Poly<K> p = Poly<K>::constant(q.field(), q.field().one());
      for (std::size_t i = 0; i < fac.multiplicity; ++i) p = p * fac.poly;
      parts.push_back(std::move(p));
    }
  } else {
    (void)rng;
    const K& f = q.field();
    Poly<K> rest = q.monic();
    for (const auto& r : rational_roots(q)) {
      Poly<K> lin(f, {f.neg(r), f.one()});
      Poly<K> p = Poly<K>::constant(f, f.one());
      while (rest.degree() > 0 && (rest % lin).is_zero()) {
        rest = rest / lin;
        p = p * lin;
      }
      parts.push_back(std::move(p));
    }
    if (rest.degree() > 0) parts.push_back(rest);
  }
  return parts;
}

}  // namespace detail

/// Complete set of pairwise orthogonal primitive idempotents summing to 1.
/// Splitting happens modulo the radical: random corner elements b = e r e
/// have their minimal polynomial (modulo J) factored, CRT idempotents split
/// the corner, and each split is lifted exactly by Newton iteration inside
/// eAe. A corner is certified local when eAe/eJe has dimension 1 or is
/// generated by one element with irreducible minimal polynomial of full
/// degree; after `kDivisionTrials` failed trials it is declared local with
/// Certainty::MonteCarlo. With `require_certified`, that case throws
/// DivisionUncertain instead.
template <ExactField K>
PrimitiveIdempotents<K> primitive_idempotents(const EndAlgebra<K>& A, Rng& rng, bool require_certified = false) {
  PrimitiveIdempotents<K> out;
  if (A.dimension() == 0) return out;
  const K& f = A.field();
  auto J = jacobson_radical(A);
  QuotientReducer<K> modJ(A, J.basis);

  std::vector<AlgebraElement<K>> stack{A.identity()};
  while (!stack.empty()) {
    AlgebraElement<K> e = std::move(stack.back());
    stack.pop_back();

    // Dimension of the corner modulo the radical.
    Matrix<K> corner(f, A.dimension(), A.dimension());
    for (std::size_t i = 0; i < A.dimension(); ++i) {
      auto v = modJ.reduce(A.mul(A.mul(e, A.basis_element(i)), e).coords);
      for (std::size_t k = 0; k < A.dimension(); ++k) corner(i, k) = v[k];
    }
    std::size_t corner_dim = rank(corner);
    ensure(corner_dim > 0, "nonzero idempotent inside the radical");
    if (corner_dim == 1) {
      out.idempotents.push_back(std::move(e));
      continue;
    }

    bool done = false;
    bool uncertified = false;
    for (std::size_t trial = 0; trial < kDivisionTrials && !done; ++trial) {
      auto b = A.mul(A.mul(e, A.random_element(rng)), e);
      // Minimal polynomial of b in eAe / eJe, with e as the unit.
      Poly<K> q = minimal_polynomial_of_sequence(f, modJ.reduce(e.coords), [&](const std::vector<typename K::value_type>& v) {
        return modJ.reduce(A.mul(A.element(v), b).coords);
      });
      auto parts = detail::coprime_parts(q, rng);
      if (parts.size() >= 2) {
        Poly<K> first = parts.front();
        Poly<K> rest = q.monic() / first;
        auto eg = poly_extended_gcd(first, rest);
        ensure(eg.g.degree() == 0, "coprime parts share a factor");
        auto eps_blocks = evaluate_blocks(eg.t * rest, A.to_blocks(b), A.to_blocks(e));
        auto eps = lift_idempotent(A, J, A.from_blocks(eps_blocks));
        ensure(A.mul(A.mul(e, eps), e) == eps, "lifted idempotent left its corner");
        stack.push_back(A.sub(e, eps));
        stack.push_back(std::move(eps));
        done = true;
      } else if constexpr (is_prime_field_v<K>) {
        if (q.degree() == static_cast<int>(corner_dim)) {
          // F[b] has full dimension and is a field: the corner is a division algebra.
          out.idempotents.push_back(e);
          done = true;
        }
      } else {
        // Over Q a polynomial of degree <= 3 without rational roots is irreducible.
        if (q.degree() == static_cast<int>(corner_dim) && q.degree() <= 3 && rational_roots(q).empty()) {
          out.idempotents.push_back(e);
          done = true;
        } else {
          uncertified = true;
        }
      }
    }
    if (!done) {
      if constexpr (is_prime_field_v<K>) {
        if (require_certified)
          throw Error(Errc::DivisionUncertain, "corner looked like a division algebra in every trial");
        out.certainty = std::max(out.certainty, Certainty::MonteCarlo);
      } else {
        (void)uncertified;
        out.certainty = Certainty::Uncertified;
      }
      out.idempotents.push_back(std::move(e));
    }
  }

  auto total = A.zero();
  for (std::size_t i = 0; i < out.idempotents.size(); ++i) {
    total = A.add(total, out.idempotents[i]);
    for (std::size_t j = 0; j < out.idempotents.size(); ++j) {
      auto prod = A.mul(out.idempotents[i], out.idempotents[j]);
      ensure(i == j ? prod == out.idempotents[i] : A.is_zero(prod), "idempotents are not orthogonal");
    }
  }
  ensure(total == A.identity(), "idempotents do not sum to one");
  return out;
}

/// Local means exactly one primitive idempotent (the zero algebra is not local).
template <ExactField K>
bool is_local(const EndAlgebra<K>& A, Rng& rng) {
  return primitive_idempotents(A, rng).idempotents.size() == 1;
}

}  // namespace qks
