#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "quiverks/algebra.hpp"
#include "quiverks/matrix.hpp"
#include "quiverks/quiver.hpp"
#include "quiverks/rng.hpp"

namespace qks {

/// Representation of a quiver on a tensor-twisted realization: a space
/// F^{d_v} per vertex and, per arrow a, a matrix of shape
/// (t_a d_{t(a)}) x (s_a d_{s(a)}) from S_a C_{s(a)} to T_a C_{t(a)}.
template <ExactField K>
struct Representation {
  K field;
  Quiver quiver;
  Realization realization;
  std::vector<std::size_t> dims;
  std::vector<Matrix<K>> maps;

  /// Validates every shape; throws ShapeError naming the offending arrow.
  static Representation make(K field, Quiver quiver, Realization realization, std::vector<std::size_t> dims,
                             std::vector<Matrix<K>> maps) {
    Representation r{std::move(field), std::move(quiver), std::move(realization), std::move(dims), std::move(maps)};
    r.check_shapes();
    return r;
  }

  /// Zero maps everywhere.
  static Representation zero_maps(K field, Quiver quiver, Realization realization, std::vector<std::size_t> dims) {
    Representation r{std::move(field), std::move(quiver), std::move(realization), std::move(dims), {}};
    for (std::size_t a = 0; a < r.quiver.arrow_count(); ++a) {
      auto [rows, cols] = r.expected_shape(a);
      r.maps.emplace_back(r.field, rows, cols);
    }
    r.check_shapes();
    return r;
  }

  std::pair<std::size_t, std::size_t> expected_shape(std::size_t a) const {
    const auto& arr = quiver.arrow(a);
    const auto& tw = realization.twists.at(a);
    return {tw.t * dims.at(arr.target), tw.s * dims.at(arr.source)};
  }

  void check_shapes() const {
    if (dims.size() != quiver.vertex_count()) throw Error(Errc::ShapeError, "dimension vector has the wrong length");
    if (realization.twists.size() != quiver.arrow_count())
      throw Error(Errc::ShapeError, "realization must give one twist per arrow");
    for (const auto& tw : realization.twists)
      if (tw.s == 0 || tw.t == 0) throw Error(Errc::ShapeError, "twist multiplicities must be positive");
    if (maps.size() != quiver.arrow_count()) throw Error(Errc::ShapeError, "one map per arrow is required");
    for (std::size_t a = 0; a < maps.size(); ++a) {
      auto [rows, cols] = expected_shape(a);
      if (maps[a].rows() != rows || maps[a].cols() != cols)
        throw Error(Errc::ShapeError, "arrow '" + quiver.arrow(a).id + "' expects a " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " matrix, got " + std::to_string(maps[a].rows()) +
                                          "x" + std::to_string(maps[a].cols()));
    }
  }

  std::size_t total_dimension() const {
    std::size_t n = 0;
    for (auto d : dims) n += d;
    return n;
  }

  bool is_zero_object() const { return total_dimension() == 0; }

  bool same_context(const Representation& o) const {
    return field == o.field && quiver == o.quiver && realization == o.realization;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.same_context(b) && a.dims == b.dims && a.maps == b.maps;
  }
};

/// Family of per-vertex matrices psi_v : C_v -> C'_v.
template <ExactField K>
struct Morphism {
  std::vector<Matrix<K>> components;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

template <ExactField K>
void require_same_context(const Representation<K>& a, const Representation<K>& b) {
  if (!a.same_context(b)) throw Error(Errc::MismatchedContext, "representations live over different quivers, realizations or fields");
}

template <ExactField K>
Morphism<K> identity_morphism(const Representation<K>& r) {
  Morphism<K> m;
  for (auto d : r.dims) m.components.push_back(Matrix<K>::identity(r.field, d));
  return m;
}

template <ExactField K>
Morphism<K> zero_morphism(const Representation<K>& src, const Representation<K>& tgt) {
  Morphism<K> m;
  for (std::size_t v = 0; v < src.dims.size(); ++v) m.components.emplace_back(src.field, tgt.dims[v], src.dims[v]);
  return m;
}

/// g o f, componentwise.
template <ExactField K>
Morphism<K> compose(const Morphism<K>& g, const Morphism<K>& f) {
  Morphism<K> m;
  for (std::size_t v = 0; v < f.components.size(); ++v) m.components.push_back(g.components[v] * f.components[v]);
  return m;
}

template <ExactField K>
Morphism<K> add(const Morphism<K>& a, const Morphism<K>& b) {
  Morphism<K> m = a;
  for (std::size_t v = 0; v < m.components.size(); ++v) m.components[v] += b.components[v];
  return m;
}

template <ExactField K>
Morphism<K> subtract(const Morphism<K>& a, const Morphism<K>& b) {
  Morphism<K> m = a;
  for (std::size_t v = 0; v < m.components.size(); ++v) m.components[v] -= b.components[v];
  return m;
}

template <ExactField K>
Morphism<K> scale(const typename K::value_type& c, const Morphism<K>& a) {
  Morphism<K> m;
  for (const auto& comp : a.components) m.components.push_back(comp.scaled(c));
  return m;
}

/// T_a psi = psi (x) I_t: vector-space index outer, twist index inner.
template <ExactField K>
Matrix<K> twist(const Matrix<K>& psi, std::size_t mult) {
  return kron(psi, Matrix<K>::identity(psi.field(), mult));
}

/// True iff every component has the right shape and, for every arrow,
/// (psi_t (x) I_t) f_a = f'_a (psi_s (x) I_s).
template <ExactField K>
bool is_morphism(const Representation<K>& src, const Representation<K>& tgt, const Morphism<K>& m) {
  if (!src.same_context(tgt) || m.components.size() != src.dims.size()) return false;
  for (std::size_t v = 0; v < src.dims.size(); ++v)
    if (m.components[v].rows() != tgt.dims[v] || m.components[v].cols() != src.dims[v]) return false;
  for (std::size_t a = 0; a < src.quiver.arrow_count(); ++a) {
    const auto& arr = src.quiver.arrow(a);
    const auto& tw = src.realization.twists[a];
    auto lhs = twist(m.components[arr.target], tw.t) * src.maps[a];
    auto rhs = tgt.maps[a] * twist(m.components[arr.source], tw.s);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// Invertible as a morphism: every component is an invertible matrix.
template <ExactField K>
bool is_isomorphism(const Morphism<K>& m) {
  for (const auto& c : m.components)
    if (!is_invertible_matrix(c)) return false;
  return true;
}

template <ExactField K>
Morphism<K> inverse_morphism(const Morphism<K>& m) {
  Morphism<K> out;
  for (const auto& c : m.components) {
    auto inv = inverse(c);
    if (!inv) throw Error(Errc::InvalidArgument, "morphism is not invertible");
    out.components.push_back(std::move(*inv));
  }
  return out;
}

template <ExactField K>
std::vector<typename K::value_type> flatten(const Morphism<K>& m) {
  std::vector<typename K::value_type> v;
  for (const auto& c : m.components) v.insert(v.end(), c.data().begin(), c.data().end());
  return v;
}

template <ExactField K>
struct HomSpace {
  Representation<K> source;
  Representation<K> target;
  /// Row-reduced basis on the flattened components (vertex order, row-major).
  std::vector<Morphism<K>> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
};

namespace detail {

/// Offsets of each vertex block in the flattened unknown vector.
template <ExactField K>
std::vector<std::size_t> unknown_offsets(const Representation<K>& src, const Representation<K>& tgt) {
  std::vector<std::size_t> off(src.dims.size() + 1, 0);
  for (std::size_t v = 0; v < src.dims.size(); ++v) off[v + 1] = off[v] + tgt.dims[v] * src.dims[v];
  return off;
}

template <ExactField K>
Morphism<K> morphism_from_flat(const Representation<K>& src, const Representation<K>& tgt,
                               std::span<const typename K::value_type> flat) {
  Morphism<K> m;
  std::size_t off = 0;
  for (std::size_t v = 0; v < src.dims.size(); ++v) {
    std::size_t n = tgt.dims[v] * src.dims[v];
    std::vector<typename K::value_type> data(flat.begin() + off, flat.begin() + off + n);
    m.components.emplace_back(src.field, tgt.dims[v], src.dims[v], std::move(data));
    off += n;
  }
  return m;
}

}  // namespace detail

/// Stacked intertwining system: one row per entry of each arrow's equation
/// (psi_t (x) I_t) f_a - f'_a (psi_s (x) I_s) = 0, one column per entry of
/// the psi_v. Assembled entrywise from the Kronecker index convention.
template <ExactField K>
Matrix<K> intertwining_system(const Representation<K>& src, const Representation<K>& tgt) {
  const K& f = src.field;
  auto off = detail::unknown_offsets(src, tgt);
  std::size_t unknowns = off.back();
  std::size_t eqs = 0;
  std::vector<std::size_t> row_off;
  for (std::size_t a = 0; a < src.quiver.arrow_count(); ++a) {
    row_off.push_back(eqs);
    const auto& arr = src.quiver.arrow(a);
    const auto& tw = src.realization.twists[a];
    eqs += (tw.t * tgt.dims[arr.target]) * (tw.s * src.dims[arr.source]);
  }
  Matrix<K> sys(f, eqs, unknowns);
  for (std::size_t a = 0; a < src.quiver.arrow_count(); ++a) {
    const auto& arr = src.quiver.arrow(a);
    const std::size_t tt = src.realization.twists[a].t;
    const std::size_t ss = src.realization.twists[a].s;
    const auto& fa = src.maps[a];
    const auto& ga = tgt.maps[a];
    const std::size_t ncols = ss * src.dims[arr.source];
    auto eq_row = [&](std::size_t r, std::size_t c) { return row_off[a] + r * ncols + c; };
    // (E_ij (x) I_tt) f_a: row i*tt + alpha equals row j*tt + alpha of f_a.
    const std::size_t dt_src = src.dims[arr.target], dt_tgt = tgt.dims[arr.target];
    for (std::size_t i = 0; i < dt_tgt; ++i)
      for (std::size_t j = 0; j < dt_src; ++j) {
        std::size_t u = off[arr.target] + i * dt_src + j;
        for (std::size_t alpha = 0; alpha < tt; ++alpha)
          for (std::size_t c = 0; c < ncols; ++c) {
            const auto& val = fa(j * tt + alpha, c);
            if (f.is_zero(val)) continue;
            auto& cell = sys(eq_row(i * tt + alpha, c), u);
            cell = f.add(cell, val);
          }
      }
    // -f'_a (E_ij (x) I_ss): column j*ss + beta equals column i*ss + beta of f'_a.
    const std::size_t ds_src = src.dims[arr.source], ds_tgt = tgt.dims[arr.source];
    const std::size_t nrows = tt * dt_tgt;
    for (std::size_t i = 0; i < ds_tgt; ++i)
      for (std::size_t j = 0; j < ds_src; ++j) {
        std::size_t u = off[arr.source] + i * ds_src + j;
        for (std::size_t beta = 0; beta < ss; ++beta)
          for (std::size_t r = 0; r < nrows; ++r) {
            const auto& val = ga(r, i * ss + beta);
            if (f.is_zero(val)) continue;
            auto& cell = sys(eq_row(r, j * ss + beta), u);
            cell = f.sub(cell, val);
          }
      }
  }
  return sys;
}

/// Basis of Hom(src, tgt): the nullspace of the stacked intertwining system,
/// returned row-reduced. Throws MismatchedContext.
template <ExactField K>
HomSpace<K> hom_space(const Representation<K>& src, const Representation<K>& tgt) {
  require_same_context(src, tgt);
  auto ker = nullspace(intertwining_system(src, tgt));
  auto basis = row_space_basis(ker.transpose());
  HomSpace<K> out{src, tgt, {}};
  for (std::size_t i = 0; i < basis.rows(); ++i) out.basis.push_back(detail::morphism_from_flat(src, tgt, basis.row(i)));
  return out;
}

template <ExactField K>
Morphism<K> combine(const Representation<K>& src, const Representation<K>& tgt, const std::vector<Morphism<K>>& basis,
                    std::span<const typename K::value_type> coeffs) {
  Morphism<K> m = zero_morphism(src, tgt);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (src.field.is_zero(coeffs[i])) continue;
    m = add(m, scale(coeffs[i], basis[i]));
  }
  return m;
}

template <ExactField K>
Morphism<K> random_morphism(const HomSpace<K>& hom, Rng& rng) {
  std::vector<typename K::value_type> c;
  for (std::size_t i = 0; i < hom.dimension(); ++i) c.push_back(random_element(hom.source.field, rng));
  return combine(hom.source, hom.target, hom.basis, c);
}

/// End(rho) computed directly as Hom(rho, rho) plus structure constants.
template <ExactField K>
EndAlgebra<K> end_algebra(const Representation<K>& r) {
  auto hom = hom_space(r, r);
  std::vector<Blocks<K>> span;
  for (auto& m : hom.basis) span.push_back(std::move(m.components));
  return EndAlgebra<K>(r.field, r.dims, span);
}

/// End(rho) as an intersection of preimages of centralizers: for each arrow
/// a, the triangular ring W_a = [[End(T_a C_t), H_a], [0, End(S_a C_s)]]
/// receives R = prod_v End(C_v) via phi_a(psi) = diag(T_a psi_t, S_a psi_s),
/// and End(rho) is the set of psi with phi_a(psi) commuting with
/// alpha_a = [[0, f_a], [0, 0]] for every arrow.
template <ExactField K>
EndAlgebra<K> end_via_centralizers(const Representation<K>& r) {
  const K& f = r.field;
  std::size_t N = 0;
  for (auto d : r.dims) N += d * d;

  // Columns of `current` span the subspace of R cut out so far.
  Matrix<K> current = Matrix<K>::identity(f, N);
  for (std::size_t a = 0; a < r.quiver.arrow_count(); ++a) {
    const auto& arr = r.quiver.arrow(a);
    const auto& tw = r.realization.twists[a];
    const std::size_t nt = tw.t * r.dims[arr.target];
    const std::size_t ns = tw.s * r.dims[arr.source];
    const std::size_t w = nt + ns;
    Matrix<K> alpha(f, w, w);
    alpha.set_block(0, nt, r.maps[a]);

    Matrix<K> phi_map(f, w * w, N);
    std::size_t col = 0;
    for (std::size_t v = 0; v < r.dims.size(); ++v) {
      for (std::size_t i = 0; i < r.dims[v]; ++i)
        for (std::size_t j = 0; j < r.dims[v]; ++j, ++col) {
          std::vector<Matrix<K>> psi;
          for (std::size_t u = 0; u < r.dims.size(); ++u) psi.emplace_back(f, r.dims[u], r.dims[u]);
          psi[v](i, j) = f.one();
          Matrix<K> phi(f, w, w);
          phi.set_block(0, 0, twist(psi[arr.target], tw.t));
          phi.set_block(nt, nt, twist(psi[arr.source], tw.s));
          Matrix<K> comm = phi * alpha - alpha * phi;
          for (std::size_t k = 0; k < w * w; ++k) phi_map(k, col) = comm.data()[k];
        }
    }
    Matrix<K> preimage = nullspace(phi_map);
    // current ∩ preimage: solve current x = preimage y.
    Matrix<K> joint = hstack(current, preimage.scaled(f.neg(f.one())));
    Matrix<K> sol = nullspace(joint);
    Matrix<K> coeff = sol.block(0, 0, current.cols(), sol.cols());
    current = current * coeff;
  }
  std::vector<Blocks<K>> span;
  for (std::size_t c = 0; c < current.cols(); ++c) {
    std::vector<typename K::value_type> v(N);
    for (std::size_t k = 0; k < N; ++k) v[k] = current(k, c);
    span.push_back(unflatten(f, r.dims, v));
  }
  return EndAlgebra<K>(f, r.dims, span);
}

template <ExactField K>
Morphism<K> to_morphism(const EndAlgebra<K>& A, const AlgebraElement<K>& x) {
  return Morphism<K>{A.to_blocks(x)};
}

template <ExactField K>
struct DirectSum {
  Representation<K> sum;
  Morphism<K> inc_first, inc_second;
  Morphism<K> proj_first, proj_second;
};

/// Blockwise direct sum with its canonical inclusions and projections.
template <ExactField K>
DirectSum<K> direct_sum(const Representation<K>& a, const Representation<K>& b) {
  require_same_context(a, b);
  const K& f = a.field;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < a.dims.size(); ++v) dims.push_back(a.dims[v] + b.dims[v]);
  std::vector<Matrix<K>> maps;
  for (std::size_t k = 0; k < a.maps.size(); ++k) maps.push_back(block_diag(a.maps[k], b.maps[k]));
  DirectSum<K> out{Representation<K>::make(f, a.quiver, a.realization, dims, std::move(maps)), {}, {}, {}, {}};
  for (std::size_t v = 0; v < dims.size(); ++v) {
    auto ia = Matrix<K>(f, dims[v], a.dims[v]);
    ia.set_block(0, 0, Matrix<K>::identity(f, a.dims[v]));
    auto ib = Matrix<K>(f, dims[v], b.dims[v]);
    ib.set_block(a.dims[v], 0, Matrix<K>::identity(f, b.dims[v]));
    out.proj_first.components.push_back(ia.transpose());
    out.proj_second.components.push_back(ib.transpose());
    out.inc_first.components.push_back(std::move(ia));
    out.inc_second.components.push_back(std::move(ib));
  }
  return out;
}

template <ExactField K>
struct Summand {
  Representation<K> rep;
  Morphism<K> inclusion;
  Morphism<K> projection;
};

/// Splits an idempotent endomorphism: X_v is the column space of e_v with
/// i_v its pivot columns and p_v the nonzero rows of rref(e_v), so
/// i_v p_v = e_v and p_v i_v = I. New arrow maps are
/// (p_t (x) I_t) f_a (i_s (x) I_s). Throws NotEndomorphism / NotIdempotent.
template <ExactField K>
Summand<K> split_idempotent(const Representation<K>& r, const Morphism<K>& e) {
  if (!is_morphism(r, r, e)) throw Error(Errc::NotEndomorphism, "split_idempotent needs an endomorphism");
  if (!(compose(e, e) == e)) throw Error(Errc::NotIdempotent, "endomorphism is not idempotent");
  Morphism<K> inc, proj;
  std::vector<std::size_t> dims;
  for (const auto& ev : e.components) {
    auto [c, rows] = rank_factorization(ev);
    dims.push_back(c.cols());
    inc.components.push_back(std::move(c));
    proj.components.push_back(std::move(rows));
  }
  std::vector<Matrix<K>> maps;
  for (std::size_t a = 0; a < r.quiver.arrow_count(); ++a) {
    const auto& arr = r.quiver.arrow(a);
    const auto& tw = r.realization.twists[a];
    maps.push_back(twist(proj.components[arr.target], tw.t) * r.maps[a] * twist(inc.components[arr.source], tw.s));
  }
  Summand<K> out{Representation<K>::make(r.field, r.quiver, r.realization, std::move(dims), std::move(maps)),
                 std::move(inc), std::move(proj)};
  ensure(compose(out.inclusion, out.projection) == e, "i o p must equal e");
  ensure(compose(out.projection, out.inclusion) == identity_morphism(out.rep), "p o i must be the identity");
  return out;
}

/// f_p = f_{a_n} ... f_{a_1}; the trivial path gives the identity.
/// Throws TwistedRealization unless every twist is (1, 1).
template <ExactField K>
Matrix<K> compose_path(const Representation<K>& r, const Path& p) {
  if (!r.realization.is_trivial()) throw Error(Errc::TwistedRealization, "paths compose only on the trivial realization");
  check_path(r.quiver, p);
  Matrix<K> acc = Matrix<K>::identity(r.field, r.dims.at(p.start));
  for (std::size_t a : p.arrows) acc = r.maps[a] * acc;
  return acc;
}

template <ExactField K>
bool check_relations(const Representation<K>& r, const PathRelations& rels) {
  if (!r.realization.is_trivial()) throw Error(Errc::TwistedRealization, "relations need the trivial realization");
  check_relations_wellformed(r.quiver, rels);
  for (const auto& rel : rels)
    if (!(compose_path(r, rel.lhs) == compose_path(r, rel.rhs))) return false;
  return true;
}

/// Uniformly random maps from the seeded generator (prime fields only).
template <ExactField K>
Representation<K> random_rep(const Quiver& q, const Realization& real, const std::vector<std::size_t>& dims,
                             const K& field, Rng& rng) {
  if constexpr (!is_prime_field_v<K>) {
    throw Error(Errc::UnsupportedField, "random_rep draws uniform residues; use random_rational_rep over Q");
  } else {
    auto r = Representation<K>::zero_maps(field, q, real, dims);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      auto [rows, cols] = r.expected_shape(a);
      r.maps[a] = Matrix<K>::random(field, rows, cols, rng);
    }
    return r;
  }
}

/// Random rational entries of bounded height (see kRationalHeight).
inline Representation<RationalField> random_rational_rep(const Quiver& q, const Realization& real,
                                                         const std::vector<std::size_t>& dims, Rng& rng) {
  RationalField f;
  auto r = Representation<RationalField>::zero_maps(f, q, real, dims);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    auto [rows, cols] = r.expected_shape(a);
    r.maps[a] = Matrix<RationalField>::random(f, rows, cols, rng);
  }
  return r;
}

/// Restriction to a full sub-quiver (trivial or twisted realizations alike).
template <ExactField K>
Representation<K> restrict_to(const Representation<K>& r, const SubQuiver& sub) {
  std::vector<std::size_t> dims;
  for (auto v : sub.vertex_map) dims.push_back(r.dims[v]);
  Realization real;
  std::vector<Matrix<K>> maps;
  for (auto a : sub.arrow_map) {
    real.twists.push_back(r.realization.twists[a]);
    maps.push_back(r.maps[a]);
  }
  return Representation<K>::make(r.field, sub.quiver, std::move(real), std::move(dims), std::move(maps));
}

template <ExactField K>
Morphism<K> restrict_to(const Morphism<K>& m, const SubQuiver& sub) {
  Morphism<K> out;
  for (auto v : sub.vertex_map) out.components.push_back(m.components[v]);
  return out;
}

/// Canonical byte string of the dimension vector and maps, used to order
/// summands deterministically.
template <ExactField K>
std::string canonical_bytes(const Representation<K>& r) {
  std::string s;
  for (const auto& m : r.maps) {
    s += m.to_string();
    s += ';';
  }
  return s;
}

}  // namespace qks
