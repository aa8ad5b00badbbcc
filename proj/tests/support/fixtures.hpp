#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "quiverks/rep.hpp"

namespace fixtures {

using qks::Matrix;
using qks::PrimeField;
using qks::Quiver;
using qks::Realization;
using qks::Representation;

inline Matrix<PrimeField> mat(const PrimeField& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return Matrix<PrimeField>::from_ints(f, rows);
}

/// Jordan block J_n(lambda).
inline Matrix<PrimeField> jordan(const PrimeField& f, std::size_t n, std::int64_t lambda) {
  Matrix<PrimeField> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = f.from_int(lambda);
    if (i + 1 < n) m(i, i + 1) = f.one();
  }
  return m;
}

inline Matrix<PrimeField> diag_blocks(const std::vector<Matrix<PrimeField>>& blocks) {
  Matrix<PrimeField> acc(blocks.front().field(), 0, 0);
  for (const auto& b : blocks) acc = qks::block_diag(acc, b);
  return acc;
}

inline Quiver loop_quiver() { return Quiver::make({"x"}, {{"f", "x", "x"}}); }
inline Quiver a2_quiver() { return Quiver::make({"x", "y"}, {{"a", "x", "y"}}); }

inline Representation<PrimeField> loop_rep(const Matrix<PrimeField>& f) {
  auto q = loop_quiver();
  return Representation<PrimeField>::make(f.field(), q, Realization::trivial(q), {f.rows()}, {f});
}

inline Representation<PrimeField> a2_rep(const PrimeField& field, std::size_t dx, std::size_t dy,
                                         const Matrix<PrimeField>& f) {
  auto q = a2_quiver();
  return Representation<PrimeField>::make(field, q, Realization::trivial(q), {dx, dy}, {f});
}

}  // namespace fixtures
