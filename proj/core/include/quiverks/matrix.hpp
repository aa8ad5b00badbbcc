#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quiverks/field.hpp"
#include "quiverks/rng.hpp"

namespace qks {

/// Dense row-major matrix over an exact field. Empty shapes (0 x n, n x 0)
/// are ordinary values; they carry the zero objects of every category here.
template <ExactField K>
class Matrix {
 public:
  using field_type = K;
  using value_type = typename K::value_type;

  Matrix(K field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(K field, std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(Errc::ShapeError, "matrix data length does not match shape");
  }

  static Matrix identity(const K& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix from small integer literals, reduced into the field.
  static Matrix from_ints(const K& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(Errc::ShapeError, "ragged matrix literal");
      std::size_t j = 0;
      for (std::int64_t v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix diagonal(const K& field, std::span<const value_type> diag) {
    Matrix m(field, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static Matrix random(const K& field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& x : m.data_) x = random_element(field, rng);
    return m;
  }

  const K& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const value_type> data() const noexcept { return data_; }
  std::span<value_type> data() noexcept { return data_; }
  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.equal((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix columns(std::span<const std::size_t> idx) const {
    Matrix out(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
    return out;
  }

  Matrix rows_of(std::span<const std::size_t> idx) const {
    Matrix out(field_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(idx[k], j);
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
    return *this;
  }

  Matrix scaled(const value_type& c) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = field_.mul(c, x);
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::ShapeError, "matrix product shape mismatch");
    const K& f = a.field_;
    Matrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const value_type& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
      }
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.field_.equal(a.data_[k], b.data_[k])) return false;
    return true;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : ", [";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j != 0) s += ", ";
        s += field_.to_string((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::ShapeError, "matrix shape mismatch");
  }

  K field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

template <ExactField K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
template <ExactField K>
RrefResult<K> rref(Matrix<K> m) {
  const K& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(inv, m(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots), r};
}

template <ExactField K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

/// Columns form a basis of {x : m x = 0}; one column per free variable, with a
/// 1 in that variable's slot.
template <ExactField K>
Matrix<K> nullspace(const Matrix<K>& m) {
  const K& f = m.field();
  auto [red, pivots, rk] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<K> basis(f, m.cols(), m.cols() - rk);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = f.one();
    for (std::size_t i = 0; i < rk; ++i) basis(pivots[i], k) = f.neg(red(i, free));
    ++k;
  }
  return basis;
}

/// Standard Kronecker product; block (i, j) of the result is a(i, j) * b.
template <ExactField K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  const K& f = a.field();
  Matrix<K> out(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (f.is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
    }
  return out;
}

template <ExactField K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (!m.is_square()) return std::nullopt;
  const K& f = m.field();
  std::size_t n = m.rows();
  Matrix<K> aug(f, n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<K>::identity(f, n));
  auto res = rref(std::move(aug));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) return std::nullopt;
  return res.reduced.block(0, n, n, n);
}

template <ExactField K>
bool is_invertible_matrix(const Matrix<K>& m) {
  return m.is_square() && rank(m) == m.rows();
}

template <ExactField K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeError, "hstack row mismatch");
  Matrix<K> out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <ExactField K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw Error(Errc::ShapeError, "vstack column mismatch");
  Matrix<K> out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

template <ExactField K>
Matrix<K> block_diag(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

template <ExactField K>
typename K::value_type trace(const Matrix<K>& m) {
  const K& f = m.field();
  auto t = f.zero();
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t = f.add(t, m(i, i));
  return t;
}

/// Row-reduced basis of the row space (zero rows dropped).
template <ExactField K>
Matrix<K> row_space_basis(const Matrix<K>& m) {
  auto res = rref(m);
  std::vector<std::size_t> keep(res.rank);
  for (std::size_t i = 0; i < res.rank; ++i) keep[i] = i;
  return res.reduced.rows_of(keep);
}

/// Rank factorisation m = c * r where c holds the pivot columns of m and r
/// the nonzero rows of rref(m).
template <ExactField K>
std::pair<Matrix<K>, Matrix<K>> rank_factorization(const Matrix<K>& m) {
  auto res = rref(m);
  std::vector<std::size_t> keep(res.rank);
  for (std::size_t i = 0; i < res.rank; ++i) keep[i] = i;
  return {m.columns(res.pivots), res.reduced.rows_of(keep)};
}

/// Incremental linear-dependence detector. Vectors are inserted one at a
/// time; an insertion that is dependent on the earlier ones returns the
/// coefficients expressing it in their terms.
template <ExactField K>
class DependencyFinder {
 public:
  using value_type = typename K::value_type;

  explicit DependencyFinder(K field) : field_(std::move(field)) {}

  std::size_t size() const noexcept { return count_; }

  std::optional<std::vector<value_type>> insert(std::vector<value_type> v) {
    const K& f = field_;
    std::vector<value_type> combo(count_ + 1, f.zero());
    combo[count_] = f.one();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& piv = pivots_[r];
      if (f.is_zero(v[piv])) continue;
      auto c = v[piv];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, rows_[r][j]));
      for (std::size_t j = 0; j < combos_[r].size(); ++j) combo[j] = f.sub(combo[j], f.mul(c, combos_[r][j]));
    }
    std::size_t piv = 0;
    while (piv < v.size() && f.is_zero(v[piv])) ++piv;
    if (piv == v.size()) {
      // combo . inserted = 0 with combo[count_] = 1, so v = -sum combo[j] inserted_j.
      std::vector<value_type> coeffs(count_);
      for (std::size_t j = 0; j < count_; ++j) coeffs[j] = f.neg(combo[j]);
      return coeffs;
    }
    auto inv = f.inv(v[piv]);
    for (auto& x : v) x = f.mul(inv, x);
    for (auto& x : combo) x = f.mul(inv, x);
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(combo));
    pivots_.push_back(piv);
    ++count_;
    return std::nullopt;
  }

 private:
  K field_;
  std::vector<std::vector<value_type>> rows_;
  std::vector<std::vector<value_type>> combos_;
  std::vector<std::size_t> pivots_;
  std::size_t count_ = 0;
};

}  // namespace qks
