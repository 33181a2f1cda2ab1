#pragma once
#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ikv/linalg.hpp"
#include "ikv/monomials.hpp"
#include "ikv/polyring.hpp"

namespace ikv::ivhs {

// ---------------------------------------------------------------------------
// Basis bookkeeping for spaces of the form  /\^s T (x) /\^p H10 (x) /\^q H01.
// Basis elements are triples of strictly increasing index tuples, enumerated
// lexicographically, with the tuple ranks mixed-radix packed.
struct ExtTensorShape {
    std::size_t dim_t = 0, dim_h10 = 0, dim_h01 = 0; // ambient dimensions
    std::size_t s = 0, p = 0, q = 0;                 // wedge orders

    std::size_t t_count() const { return binom(dim_t, s); }
    std::size_t h10_count() const { return binom(dim_h10, p); }
    std::size_t h01_count() const { return binom(dim_h01, q); }
    std::size_t dim() const { return t_count() * h10_count() * h01_count(); }

    std::size_t index(std::size_t ra, std::size_t rb, std::size_t rc) const {
        return (ra * h10_count() + rb) * h01_count() + rc;
    }

    struct Parts {
        std::size_t ra, rb, rc;
    };
    Parts parts(std::size_t idx) const {
        const std::size_t rc = idx % h01_count();
        idx /= h01_count();
        return Parts{idx / h10_count(), idx % h10_count(), rc};
    }
};

// ---------------------------------------------------------------------------
// Determinants and wedge coordinates.

template <class F>
typename F::Elem det(const F& field, la::DenseMatrix<F> m) {
    if (m.rows != m.cols) throw Error("det: matrix not square");
    auto acc = field.one();
    for (std::size_t col = 0; col < m.cols; ++col) {
        std::size_t sel = col;
        while (sel < m.rows && field.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) return field.zero();
        if (sel != col) {
            for (std::size_t c = col; c < m.cols; ++c) std::swap(m.at(col, c), m.at(sel, c));
            acc = field.neg(acc);
        }
        acc = field.mul(acc, m.at(col, col));
        const auto inv = field.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < m.rows; ++r) {
            if (field.is_zero(m.at(r, col))) continue;
            const auto factor = field.mul(inv, m.at(r, col));
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = field.sub(m.at(r, c), field.mul(factor, m.at(col, c)));
        }
    }
    return acc;
}

// Coordinates of v_0 /\ ... /\ v_(k-1) on the combo basis of /\^k F^n:
// the coefficient at combo A is the k x k minor on columns A.
template <class F>
std::vector<typename F::Elem> wedge_expand(const F& field, const la::DenseMatrix<F>& vectors) {
    const std::size_t k = vectors.rows, n = vectors.cols;
    if (k > n) throw OrderOutOfRange("wedge_expand: more vectors than ambient dimension");
    const std::size_t count = binom(n, k);
    std::vector<typename F::Elem> out(count, field.zero());
    for (std::size_t r = 0; r < count; ++r) {
        const Combo a = combo_unrank(n, k, r);
        la::DenseMatrix<F> minor = la::DenseMatrix<F>::zero(field, k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = vectors.at(i, a[j]);
        out[r] = det(field, minor);
    }
    return out;
}

// out += scale * (v /\ e_C) in /\^(|C|+1) coordinates, where v is a dense
// vector. Prepending v_k costs the sign of moving index k into sorted
// position, i.e. (-1)^(number of elements of C below k).
template <class F>
void wedge_prepend_accumulate(const F& field, std::size_t n, const Combo& c,
                              const std::vector<typename F::Elem>& v,
                              const typename F::Elem& scale,
                              std::vector<typename F::Elem>& out) {
    for (std::size_t k = 0; k < n; ++k) {
        if (field.is_zero(v[k])) continue;
        Combo merged = c;
        const auto pos = combo_insert(merged, k);
        if (!pos) continue; // repeated factor, wedge vanishes
        auto term = field.mul(scale, v[k]);
        if (*pos % 2 == 1) term = field.neg(term);
        const std::size_t idx = combo_rank(n, merged);
        out[idx] = field.add(out[idx], term);
    }
}

// Comultiplication /\^s V -> V (x) /\^(s-1) V on basis elements:
//   e_A |-> sum_t (-1)^t e_(A[t]) (x) e_(A minus A[t]).
// This convention pairs with the wedge so that <comult(x), a (x) b> equals
// <x, a /\ b> (Laplace expansion of the minor along the row of a).
template <class F>
la::DenseMatrix<F> comult_matrix(const F& field, std::size_t n, std::size_t s) {
    if (s < 1) throw OrderOutOfRange("comult_matrix: wedge order must be positive");
    const std::size_t src = binom(n, s), rest = binom(n, s - 1);
    la::DenseMatrix<F> m = la::DenseMatrix<F>::zero(field, n * rest, src);
    for (std::size_t r = 0; r < src; ++r) {
        const Combo a = combo_unrank(n, s, r);
        for (std::size_t t = 0; t < s; ++t) {
            const std::size_t row = a[t] * rest + combo_rank(n, combo_drop(a, t));
            m.at(row, r) = (t % 2 == 0) ? field.one() : field.neg(field.one());
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// The variation data of the cyclic cover curve of a smooth binary form f:
//
//   H10 = R^(d-3) of the cover ring   (forms of weight one, dim g)
//   H01 = R^(2d-3)                    (its Serre dual, dim g)
//   T   = a subspace of R^d           (tangent directions)
//
// and the contraction T (x) H10 -> H01 given by ring multiplication.
// TangentMode picks T: the classes coming from degree-d binary forms
// (deformations of f inside the family; dim d-3), or all of R^d.
enum class TangentMode { ikeda_slice, full_plane };

template <class F>
struct IvhsData {
    F field;
    ring::JacobianRing<F> cover;
    ring::JacobianRing<F> plane;
    std::size_t g = 0;
    TangentMode mode = TangentMode::ikeda_slice;
    // positions (into the standard monomial basis of R^d) spanning T
    std::vector<std::size_t> tangent_positions;
    // ctab[i][j] = class of t_i * omega_j in H01 coordinates
    std::vector<std::vector<std::vector<typename F::Elem>>> ctab;

    unsigned d() const { return cover.d(); }
    std::size_t dim_t() const { return tangent_positions.size(); }

    ExtTensorShape shape(std::size_t s, std::size_t p, std::size_t q) const {
        return ExtTensorShape{dim_t(), g, g, s, p, q};
    }

    // contraction of a T-coordinate vector with an H10-coordinate vector
    std::vector<typename F::Elem> contract(const std::vector<typename F::Elem>& u,
                                           const std::vector<typename F::Elem>& om) const {
        std::vector<typename F::Elem> out(g, field.zero());
        for (std::size_t i = 0; i < dim_t(); ++i) {
            if (field.is_zero(u[i])) continue;
            for (std::size_t j = 0; j < g; ++j) {
                if (field.is_zero(om[j])) continue;
                out = la::vec_axpy(field, field.mul(u[i], om[j]), ctab[i][j], std::move(out));
            }
        }
        return out;
    }
};

template <class F>
IvhsData<F> build_ivhs(const F& field, const ring::BinaryForm<F>& f,
                       TangentMode mode = TangentMode::ikeda_slice) {
    if (!ring::smoothness_check_binary(field, f))
        throw NotSmooth("the binary form has a repeated root");
    const unsigned d = f.d;
    IvhsData<F> data{field, ring::JacobianRing<F>::cover(field, f),
                     ring::JacobianRing<F>::binary(field, f),
                     static_cast<std::size_t>(d - 1) * (d - 2) / 2, mode,
                     {}, {}};

    const auto& tp = data.cover.piece(d);
    for (std::size_t j = 0; j < tp.dim(); ++j) {
        if (mode == TangentMode::full_plane ||
            ternary_mono(d, tp.standard_monomials()[j]).y == 0)
            data.tangent_positions.push_back(j);
    }

    const auto& h10 = data.cover.piece(d - 3);
    if (h10.dim() != data.g || data.cover.piece(2 * d - 3).dim() != data.g)
        throw Error("cover ring piece dimensions do not match the genus");

    data.ctab.resize(data.tangent_positions.size());
    for (std::size_t i = 0; i < data.tangent_positions.size(); ++i) {
        std::vector<typename F::Elem> ti(tp.dim(), field.zero());
        ti[data.tangent_positions[i]] = field.one();
        data.ctab[i].reserve(data.g);
        for (std::size_t j = 0; j < data.g; ++j) {
            std::vector<typename F::Elem> oj(data.g, field.zero());
            oj[j] = field.one();
            data.ctab[i].push_back(data.cover.multiply_classes(d, ti, d - 3, oj));
        }
    }
    return data;
}

// ---------------------------------------------------------------------------
// The transposed differential on wedge powers,
//
//   /\^s T (x) /\^p H10 (x) /\^q H01 -> /\^(s-1) T (x) /\^(p-1) H10 (x) /\^(q+1) H01
//   u_A (x) w_B (x) e_C |-> sum_(i,j) (-1)^(i+j) u_(A-i) (x) w_(B-j) (x) (u_i w_j) /\ e_C,
//
// returned as a dense matrix on the basis enumerations above. Wedge orders
// beyond the ambient dimension give zero spaces and empty matrices.
template <class F>
struct NablaMap {
    ExtTensorShape src, dst;
    la::DenseMatrix<F> mat; // dst.dim() x src.dim()
};

template <class F>
NablaMap<F> transposed_nabla(const F& field, const IvhsData<F>& data, std::size_t s,
                             std::size_t p, std::size_t q) {
    if (s < 1 || p < 1) throw OrderOutOfRange("transposed_nabla: needs s >= 1 and p >= 1");
    const ExtTensorShape src = data.shape(s, p, q);
    const ExtTensorShape dst = data.shape(s - 1, p - 1, q + 1);
    NablaMap<F> out{src, dst, la::DenseMatrix<F>::zero(field, dst.dim(), src.dim())};
    if (src.dim() == 0 || dst.dim() == 0) return out;

    const std::size_t g = data.g;
    std::vector<typename F::Elem> scratch(dst.h01_count(), field.zero());
    for (std::size_t ra = 0; ra < src.t_count(); ++ra) {
        const Combo a = combo_unrank(data.dim_t(), s, ra);
        for (std::size_t rb = 0; rb < src.h10_count(); ++rb) {
            const Combo b = combo_unrank(g, p, rb);
            for (std::size_t rc = 0; rc < src.h01_count(); ++rc) {
                const Combo c = combo_unrank(g, q, rc);
                const std::size_t col = src.index(ra, rb, rc);
                for (std::size_t i = 0; i < s; ++i) {
                    const std::size_t ra2 = combo_rank(data.dim_t(), combo_drop(a, i));
                    for (std::size_t j = 0; j < p; ++j) {
                        const std::size_t rb2 = combo_rank(g, combo_drop(b, j));
                        auto sign = ((i + j) % 2 == 0) ? field.one() : field.neg(field.one());
                        std::fill(scratch.begin(), scratch.end(), field.zero());
                        wedge_prepend_accumulate(field, g, c, data.ctab[a[i]][b[j]], sign, scratch);
                        for (std::size_t rc2 = 0; rc2 < scratch.size(); ++rc2) {
                            if (field.is_zero(scratch[rc2])) continue;
                            auto& cell = out.mat.at(dst.index(ra2, rb2, rc2), col);
                            cell = field.add(cell, scratch[rc2]);
                        }
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Character weights of the order-d cover automorphism. It scales Y by a
// primitive d-th root of unity; a monomial class of Y-degree a in either
// H10 or H01 picks up one extra twist from the covering form, landing in
// the (a + 1 mod d)-eigenspace.
inline unsigned character_weight(unsigned d, unsigned y_exp, unsigned twist = 1) {
    return (y_exp + twist) % d;
}

template <class F>
std::vector<unsigned> piece_weights(const ring::GradedQuotientPiece<F>& piece, unsigned d,
                                    unsigned twist = 1) {
    if (piece.nvars != 3) throw Error("piece_weights: expected a three-variable piece");
    std::vector<unsigned> out;
    out.reserve(piece.dim());
    for (std::size_t idx : piece.standard_monomials())
        out.push_back(character_weight(d, ternary_mono(piece.degree, idx).y, twist));
    return out;
}

inline std::size_t eigenspace_dim(const std::vector<unsigned>& weights, unsigned w) {
    std::size_t n = 0;
    for (unsigned x : weights)
        if (x == w) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// The space dual to the degree-s invariant of the family, realized as a
// kernel. Source vectors live in /\^s T (x) /\^(s+1) H10 (x) H01; the map
// comultiplies the T-wedge and, in each T-component, reduces modulo the
// image of the transposed differential out of /\^s T (x) /\^(s+2) H10.
// Elements of the kernel are defined up to the image of the differential
// out of /\^(s+1) T (x) /\^(s+2) H10 (the "modded image", zero when T has
// dimension s).
template <class F>
struct DualInvariantContext {
    std::size_t s = 0;
    ExtTensorShape src; // (s, s+1, 1)
    ExtTensorShape mid; // (s-1, s+1, 1), the target of the inner differential
    la::QuotientSpace<F> mid_quot; // mid modulo Im(nabla at (s, s+2, 0))

    std::vector<typename F::Elem> composite_image(const F& field, const IvhsData<F>& data,
                                                  const std::vector<typename F::Elem>& x) const {
        if (x.size() != src.dim()) throw DegreeMismatch("composite_image: bad source length");
        const std::size_t dim_t = data.dim_t();
        std::vector<std::vector<typename F::Elem>> blocks(
            dim_t, std::vector<typename F::Elem>(mid.dim(), field.zero()));
        for (std::size_t col = 0; col < x.size(); ++col) {
            if (field.is_zero(x[col])) continue;
            const auto parts = src.parts(col);
            const Combo a = combo_unrank(dim_t, s, parts.ra);
            for (std::size_t t = 0; t < s; ++t) {
                const std::size_t ra2 = combo_rank(dim_t, combo_drop(a, t));
                const std::size_t m = mid.index(ra2, parts.rb, parts.rc);
                auto& cell = blocks[a[t]][m];
                cell = (t % 2 == 0) ? field.add(cell, x[col]) : field.sub(cell, x[col]);
            }
        }
        std::vector<typename F::Elem> out;
        out.reserve(dim_t * mid_quot.dim());
        for (auto& blk : blocks) {
            auto proj = mid_quot.project(field, std::move(blk));
            out.insert(out.end(), proj.begin(), proj.end());
        }
        return out;
    }

    bool in_kernel(const F& field, const IvhsData<F>& data,
                   const std::vector<typename F::Elem>& x) const {
        return la::vec_is_zero(field, composite_image(field, data, x));
    }
};

template <class F>
DualInvariantContext<F> build_dual_invariant_context(const F& field, const IvhsData<F>& data,
                                                     std::size_t s) {
    if (s < 1 || s + 2 > data.g)
        throw OrderOutOfRange("dual invariant space needs 1 <= s <= g - 2");
    auto inner = transposed_nabla(field, data, s, s + 2, 0);
    auto im = la::image(field, inner.mat);
    return DualInvariantContext<F>{s, data.shape(s, s + 1, 1), inner.dst,
                                   la::quotient(field, inner.dst.dim(), std::move(im))};
}

template <class F>
struct DualInvariantSpace {
    DualInvariantContext<F> ctx;
    la::DenseMatrix<F> kernel_basis; // rows span Ker(composite map)
    la::Subspace<F> modded_image;    // Im(nabla at (s+1, s+2, 0)) inside the source
    std::size_t invariant_dim() const { return kernel_basis.rows - modded_image.dim(); }
};

// The kernel is assembled from one sparse constraint row per pair (tangent
// component, quotient coordinate); each row touches at most one source
// index directly plus one per pivot of the reduced image basis.
template <class F>
DualInvariantSpace<F> dual_invariant_space(const F& field, const IvhsData<F>& data,
                                           std::size_t s, Rng& rng) {
    auto ctx = build_dual_invariant_context(field, data, s);
    const std::size_t dim_t = data.dim_t();

    // src_of[tau][ra'] = (rank of A' with tau inserted, sign), when tau is
    // not already in A'
    const std::size_t mid_t_count = ctx.mid.t_count();
    struct Entry {
        std::size_t ra = 0;
        int sign = 0; // 0 marks "tau already present"
    };
    std::vector<std::vector<Entry>> src_of(dim_t, std::vector<Entry>(mid_t_count));
    for (std::size_t ra2 = 0; ra2 < mid_t_count; ++ra2) {
        const Combo a2 = combo_unrank(dim_t, s - 1, ra2);
        for (std::size_t tau = 0; tau < dim_t; ++tau) {
            Combo merged = a2;
            const auto pos = combo_insert(merged, tau);
            if (!pos) continue;
            src_of[tau][ra2] = Entry{combo_rank(dim_t, merged),
                                     (*pos % 2 == 0) ? 1 : -1};
        }
    }

    const auto& denom = ctx.mid_quot.denom; // RREF of the inner image
    std::vector<la::SparseVec<F>> rows;
    rows.reserve(dim_t * ctx.mid_quot.dim());
    auto src_index_of_mid = [&](std::size_t tau, std::size_t m) -> std::optional<std::pair<std::size_t, int>> {
        const auto parts = ctx.mid.parts(m);
        const Entry& e = src_of[tau][parts.ra];
        if (e.sign == 0) return std::nullopt;
        return std::make_pair(ctx.src.index(e.ra, parts.rb, parts.rc), e.sign);
    };
    for (std::size_t tau = 0; tau < dim_t; ++tau) {
        for (std::size_t c : ctx.mid_quot.coset_cols) {
            std::vector<std::pair<std::size_t, typename F::Elem>> terms;
            if (auto hit = src_index_of_mid(tau, c))
                terms.emplace_back(hit->first,
                                   hit->second > 0 ? field.one() : field.neg(field.one()));
            for (std::size_t r = 0; r < denom.basis.rows; ++r) {
                const auto& coef = denom.basis.at(r, c);
                if (field.is_zero(coef)) continue;
                if (auto hit = src_index_of_mid(tau, denom.pivots[r])) {
                    auto v = field.mul(coef, hit->second > 0 ? field.one() : field.neg(field.one()));
                    terms.emplace_back(hit->first, field.neg(v));
                }
            }
            if (terms.empty()) continue;
            std::sort(terms.begin(), terms.end(),
                      [](const auto& l, const auto& r) { return l.first < r.first; });
            la::SparseVec<F> row;
            row.entries = std::move(terms);
            rows.push_back(std::move(row));
        }
    }

    auto ker = la::kernel_of_rows(field, rows, ctx.src.dim(), rng);
    auto outer = transposed_nabla(field, data, s + 1, s + 2, 0);
    auto modded = la::image(field, outer.mat);
    return DualInvariantSpace<F>{std::move(ctx), std::move(ker), std::move(modded)};
}

} // namespace ikv::ivhs
