#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quiverks/algebra.hpp"
#include "quiverks/rep.hpp"

namespace qks {

/// System of bilinear forms omega: A x B -> F^M, omega(a, b)_k = a^T G_k b.
template <ExactField K>
struct Pairing {
  K field;
  std::size_t dim_a = 0, dim_b = 0, dim_m = 0;
  std::vector<Matrix<K>> grams;

  static Pairing make(K field, std::size_t dim_a, std::size_t dim_b, std::size_t dim_m, std::vector<Matrix<K>> grams) {
    if (grams.size() != dim_m)
      throw Error(Errc::ShapeError, "expected " + std::to_string(dim_m) + " Gram matrices, got " + std::to_string(grams.size()));
    for (std::size_t k = 0; k < grams.size(); ++k)
      if (grams[k].rows() != dim_a || grams[k].cols() != dim_b)
        throw Error(Errc::ShapeError, "Gram matrix " + std::to_string(k) + " must be " + std::to_string(dim_a) + "x" +
                                          std::to_string(dim_b));
    return {std::move(field), dim_a, dim_b, dim_m, std::move(grams)};
  }

  static Pairing zero(K field, std::size_t dim_a, std::size_t dim_b, std::size_t dim_m) {
    std::vector<Matrix<K>> g;
    for (std::size_t k = 0; k < dim_m; ++k) g.emplace_back(field, dim_a, dim_b);
    return make(std::move(field), dim_a, dim_b, dim_m, std::move(g));
  }

  friend bool operator==(const Pairing& x, const Pairing& y) {
    return x.field == y.field && x.dim_a == y.dim_a && x.dim_b == y.dim_b && x.dim_m == y.dim_m && x.grams == y.grams;
  }
};

/// Morphism omega -> omega': f : A -> A' and g : B' -> B (reversed) with
/// f^T G'_k = G_k g for every k.
template <ExactField K>
struct PairingMorphism {
  Matrix<K> f;
  Matrix<K> g;

  friend bool operator==(const PairingMorphism&, const PairingMorphism&) = default;
};

template <ExactField K>
bool is_pairing_morphism(const Pairing<K>& src, const Pairing<K>& tgt, const PairingMorphism<K>& m) {
  if (src.dim_m != tgt.dim_m) return false;
  if (m.f.rows() != tgt.dim_a || m.f.cols() != src.dim_a || m.g.rows() != src.dim_b || m.g.cols() != tgt.dim_b)
    return false;
  auto ft = m.f.transpose();
  for (std::size_t k = 0; k < src.dim_m; ++k)
    if (!(ft * tgt.grams[k] == src.grams[k] * m.g)) return false;
  return true;
}

/// (f, g) o (f', g') = (f f', g' g).
template <ExactField K>
PairingMorphism<K> compose(const PairingMorphism<K>& second, const PairingMorphism<K>& first) {
  return {second.f * first.f, first.g * second.g};
}

template <ExactField K>
PairingMorphism<K> identity_morphism(const Pairing<K>& w) {
  return {Matrix<K>::identity(w.field, w.dim_a), Matrix<K>::identity(w.field, w.dim_b)};
}

template <ExactField K>
void require_same_m(const Pairing<K>& a, const Pairing<K>& b) {
  if (!(a.field == b.field)) throw Error(Errc::MismatchedContext, "pairings live over different fields");
  if (a.dim_m != b.dim_m) throw Error(Errc::MismatchedM, "pairings take values in spaces of different dimension");
}

/// Basis of Hom(omega, omega') from one stacked solve of f^T G'_k - G_k g = 0.
/// Unknowns are f (row-major) followed by g (row-major); basis is row-reduced.
template <ExactField K>
std::vector<PairingMorphism<K>> pairing_hom(const Pairing<K>& src, const Pairing<K>& tgt) {
  require_same_m(src, tgt);
  const K& F = src.field;
  const std::size_t a = src.dim_a, a2 = tgt.dim_a, b = src.dim_b, b2 = tgt.dim_b;
  const std::size_t nf = a2 * a, ng = b * b2;
  Matrix<K> sys(F, src.dim_m * a * b2, nf + ng);
  for (std::size_t k = 0; k < src.dim_m; ++k)
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b2; ++j) {
        std::size_t row = (k * a + i) * b2 + j;
        // (f^T G'_k)[i][j] = sum_l f[l][i] G'_k[l][j]
        for (std::size_t l = 0; l < a2; ++l) sys(row, l * a + i) = tgt.grams[k](l, j);
        // (G_k g)[i][j] = sum_m G_k[i][m] g[m][j]
        for (std::size_t m = 0; m < b; ++m) sys(row, nf + m * b2 + j) = F.neg(src.grams[k](i, m));
      }
  auto basis = row_space_basis(nullspace(sys).transpose());
  std::vector<PairingMorphism<K>> out;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    auto row = basis.row(r);
    std::vector<typename K::value_type> fv(row.begin(), row.begin() + nf), gv(row.begin() + nf, row.end());
    out.push_back({Matrix<K>(F, a2, a, std::move(fv)), Matrix<K>(F, b, b2, std::move(gv))});
  }
  return out;
}

/// End(omega) as block-diagonal pairs (f, g^T): transposing the reversed B
/// component turns (f, g) o (f', g') = (f f', g' g) into blockwise products.
template <ExactField K>
EndAlgebra<K> pairing_end(const Pairing<K>& w) {
  std::vector<Blocks<K>> span;
  for (auto& m : pairing_hom(w, w)) span.push_back({m.f, m.g.transpose()});
  return EndAlgebra<K>(w.field, {w.dim_a, w.dim_b}, span);
}

template <ExactField K>
PairingMorphism<K> to_pairing_morphism(const EndAlgebra<K>& A, const AlgebraElement<K>& x) {
  auto blocks = A.to_blocks(x);
  return {blocks[0], blocks[1].transpose()};
}

/// Isometry (f, h) with f, h invertible and f^T G'_k h = G_k, i.e.
/// omega'(f a, h b) = omega(a, b).
template <ExactField K>
struct IsometryWitness {
  Matrix<K> f;
  Matrix<K> h;
};

template <ExactField K>
bool is_isometry(const Pairing<K>& src, const Pairing<K>& tgt, const IsometryWitness<K>& w) {
  if (src.dim_m != tgt.dim_m || src.dim_a != tgt.dim_a || src.dim_b != tgt.dim_b) return false;
  if (w.f.rows() != tgt.dim_a || w.f.cols() != src.dim_a || w.h.rows() != tgt.dim_b || w.h.cols() != src.dim_b)
    return false;
  if (!is_invertible_matrix(w.f) || !is_invertible_matrix(w.h)) return false;
  auto ft = w.f.transpose();
  for (std::size_t k = 0; k < src.dim_m; ++k)
    if (!(ft * tgt.grams[k] * w.h == src.grams[k])) return false;
  return true;
}

namespace detail {

/// An invertible morphism (f, g) turned into the isometry (f, g^{-1}).
template <ExactField K>
IsometryWitness<K> isometry_from(const Pairing<K>& src, const Pairing<K>& tgt, const PairingMorphism<K>& m) {
  auto h = inverse(m.g);
  ensure(h.has_value() && is_invertible_matrix(m.f), "isometry candidate is not invertible");
  IsometryWitness<K> w{m.f, std::move(*h)};
  ensure(is_isometry(src, tgt, w), "isometry witness fails the form identity");
  return w;
}

template <ExactField K>
std::string pairing_bytes(const Pairing<K>& w) {
  std::string s;
  for (const auto& g : w.grams) s += g.to_string() + ";";
  return s;
}

template <ExactField K>
bool pairing_less(const Pairing<K>& x, const Pairing<K>& y) {
  if (x.dim_a != y.dim_a) return x.dim_a < y.dim_a;
  if (x.dim_b != y.dim_b) return x.dim_b < y.dim_b;
  return pairing_bytes(x) < pairing_bytes(y);
}

}  // namespace detail

/// Isometry test for pairings with local endomorphism rings, by the same
/// radical argument as for representations.
template <ExactField K>
std::optional<IsometryWitness<K>> isometric_indecomposables(const Pairing<K>& x, const Pairing<K>& y) {
  if (x.dim_m != y.dim_m || x.dim_a != y.dim_a || x.dim_b != y.dim_b) return std::nullopt;
  if (x == y) return IsometryWitness<K>{Matrix<K>::identity(x.field, x.dim_a), Matrix<K>::identity(x.field, x.dim_b)};
  auto xy = pairing_hom(x, y);
  if (xy.empty()) return std::nullopt;
  auto yx = pairing_hom(y, x);
  for (const auto& g : yx)
    for (const auto& f : xy) {
      auto gf = compose(g, f);
      if (is_invertible_matrix(gf.f) && is_invertible_matrix(gf.g)) return detail::isometry_from(x, y, f);
    }
  return std::nullopt;
}

/// Base-change pair for one copy of a summand: columns spanning its A-part
/// and B-part inside the original spaces.
template <ExactField K>
struct PairingSummandWitness {
  Matrix<K> a_basis;
  Matrix<K> b_basis;
};

template <ExactField K>
struct PairingSummand {
  Pairing<K> pairing;
  std::size_t multiplicity = 0;
  std::vector<PairingSummandWitness<K>> witnesses;
};

template <ExactField K>
struct PairingDecomposition {
  Pairing<K> original;
  std::vector<PairingSummand<K>> summands;
  /// Concatenated witnesses: P^T G_k Q is block diagonal in summand order.
  Matrix<K> p;
  Matrix<K> q;
  Certainty certainty = Certainty::Proven;
};

/// Orthogonal sum of pairings in listed order (block-diagonal Gram matrices).
template <ExactField K>
Pairing<K> orthogonal_sum(const Pairing<K>& x, const Pairing<K>& y) {
  require_same_m(x, y);
  std::vector<Matrix<K>> g;
  for (std::size_t k = 0; k < x.dim_m; ++k) g.push_back(block_diag(x.grams[k], y.grams[k]));
  return Pairing<K>::make(x.field, x.dim_a + y.dim_a, x.dim_b + y.dim_b, x.dim_m, std::move(g));
}

/// Orthogonal decomposition: each primitive idempotent (e_f, e_g) of
/// End(omega) cuts out the A-subspace im(e_f) and the B-subspace im(e_g);
/// the summand is omega restricted to that pair. The concatenated bases
/// block-diagonalize every G_k simultaneously.
template <ExactField K>
PairingDecomposition<K> orthogonal_decompose(const Pairing<K>& w, Rng& rng, bool require_certified = false) {
  const K& F = w.field;
  PairingDecomposition<K> out{w, {}, Matrix<K>(F, w.dim_a, 0), Matrix<K>(F, w.dim_b, 0), Certainty::Proven};
  if (w.dim_a + w.dim_b == 0) return out;
  auto A = pairing_end(w);
  auto prim = primitive_idempotents(A, rng, require_certified);
  out.certainty = prim.certainty;

  struct Piece {
    Pairing<K> pairing;
    PairingSummandWitness<K> witness;
  };
  std::vector<Piece> pieces;
  for (const auto& e : prim.idempotents) {
    auto m = to_pairing_morphism(A, e);
    ensure(is_pairing_morphism(w, w, m), "idempotent is not an endomorphism of the pairing");
    auto ia = rank_factorization(m.f).first;
    auto ib = rank_factorization(m.g).first;
    std::vector<Matrix<K>> g;
    for (const auto& gk : w.grams) g.push_back(ia.transpose() * gk * ib);
    pieces.push_back({Pairing<K>::make(F, ia.cols(), ib.cols(), w.dim_m, std::move(g)), {ia, ib}});
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Piece& x, const Piece& y) { return detail::pairing_less(x.pairing, y.pairing); });

  for (auto& piece : pieces) {
    bool grouped = false;
    for (auto& group : out.summands) {
      auto iso = isometric_indecomposables(group.pairing, piece.pairing);
      if (!iso) continue;
      // Columns of the representative's basis: a_basis f, b_basis h.
      group.witnesses.push_back({piece.witness.a_basis * iso->f, piece.witness.b_basis * iso->h});
      ++group.multiplicity;
      grouped = true;
      break;
    }
    if (!grouped) out.summands.push_back({piece.pairing, 1, {piece.witness}});
  }

  for (const auto& s : out.summands)
    for (const auto& wit : s.witnesses) {
      out.p = hstack(out.p, wit.a_basis);
      out.q = hstack(out.q, wit.b_basis);
    }
  ensure(is_invertible_matrix(out.p) && is_invertible_matrix(out.q), "summand bases do not span");
  auto sum = reassemble(out);
  for (std::size_t k = 0; k < w.dim_m; ++k)
    ensure(out.p.transpose() * w.grams[k] * out.q == sum.grams[k], "base change does not block-diagonalize");
  return out;
}

template <ExactField K>
Pairing<K> reassemble(const PairingDecomposition<K>& d) {
  auto acc = Pairing<K>::zero(d.original.field, 0, 0, d.original.dim_m);
  for (const auto& s : d.summands)
    for (std::size_t c = 0; c < s.multiplicity; ++c) acc = orthogonal_sum(acc, s.pairing);
  return acc;
}

/// Isometry search: equal dimensions required; identical pairings give the
/// identity; otherwise both sides are decomposed and summands matched.
template <ExactField K>
std::optional<IsometryWitness<K>> isometry_test(const Pairing<K>& x, const Pairing<K>& y, Rng& rng) {
  if (!(x.field == y.field) || x.dim_m != y.dim_m || x.dim_a != y.dim_a || x.dim_b != y.dim_b) return std::nullopt;
  if (x == y) return IsometryWitness<K>{Matrix<K>::identity(x.field, x.dim_a), Matrix<K>::identity(x.field, x.dim_b)};
  auto dx = orthogonal_decompose(x, rng);
  auto dy = orthogonal_decompose(y, rng);
  if (dx.summands.size() != dy.summands.size()) return std::nullopt;
  // Block isometry between the reassembled forms, in y's summand order.
  const K& F = x.field;
  std::vector<bool> used(dy.summands.size(), false);
  Matrix<K> f(F, x.dim_a, x.dim_a), h(F, x.dim_b, x.dim_b);
  // Column offsets of each summand's copies inside dx.p / dy.p.
  auto offsets = [](const PairingDecomposition<K>& d) {
    std::vector<std::pair<std::size_t, std::size_t>> off;
    std::size_t oa = 0, ob = 0;
    for (const auto& s : d.summands) {
      off.emplace_back(oa, ob);
      oa += s.multiplicity * s.pairing.dim_a;
      ob += s.multiplicity * s.pairing.dim_b;
    }
    return off;
  };
  auto ox = offsets(dx), oy = offsets(dy);
  for (std::size_t i = 0; i < dx.summands.size(); ++i) {
    const auto& sx = dx.summands[i];
    bool found = false;
    for (std::size_t j = 0; j < dy.summands.size() && !found; ++j) {
      const auto& sy = dy.summands[j];
      if (used[j] || sx.multiplicity != sy.multiplicity) continue;
      auto iso = isometric_indecomposables(sx.pairing, sy.pairing);
      if (!iso) continue;
      used[j] = true;
      found = true;
      for (std::size_t c = 0; c < sx.multiplicity; ++c) {
        f.set_block(oy[j].first + c * sy.pairing.dim_a, ox[i].first + c * sx.pairing.dim_a, iso->f);
        h.set_block(oy[j].second + c * sy.pairing.dim_b, ox[i].second + c * sx.pairing.dim_b, iso->h);
      }
    }
    if (!found) return std::nullopt;
  }
  // G_x = Px^{-T} S_x Qx^{-1} and likewise for y, so an isometry (f, h) of the
  // block forms becomes (Py f Px^{-1}, Qy h Qx^{-1}).
  auto px_inv = inverse(dx.p), qx_inv = inverse(dx.q);
  ensure(px_inv && qx_inv, "decomposition bases are singular");
  IsometryWitness<K> w{dy.p * f * *px_inv, dy.q * h * *qx_inv};
  ensure(is_isometry(x, y, w), "assembled isometry fails the form identity");
  return w;
}

/// A2 quiver u -> w with twist (1, M) whose representation has End equal to
/// End(omega): C_u = A, C_w = B, f[(j M + k), i] = G_k[i][j], psi_w = g^T.
template <ExactField K>
Representation<K> pairing_as_representation(const Pairing<K>& w) {
  auto q = Quiver::make({"A", "B"}, {{"omega", "A", "B"}});
  // With M = 0 the twisted arrow carries no data; a zero (1, 1) arrow imposes nothing either.
  const std::size_t m = std::max<std::size_t>(w.dim_m, 1);
  Realization real{{Twist{1, m}}};
  Matrix<K> f(w.field, w.dim_b * m, w.dim_a);
  for (std::size_t k = 0; k < w.dim_m; ++k)
    for (std::size_t i = 0; i < w.dim_a; ++i)
      for (std::size_t j = 0; j < w.dim_b; ++j) f(j * m + k, i) = w.grams[k](i, j);
  return Representation<K>::make(w.field, q, real, {w.dim_a, w.dim_b}, {f});
}

}  // namespace qks
