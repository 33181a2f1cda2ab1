#pragma once
#include <cstddef>
#include <map>
#include <vector>

#include "ikv/polyring.hpp"

namespace ikv::koszul {

// Pluricanonical sections of the degree-d plane model C = {Y^d = f}:
// H^0(mK) is realized as the ternary forms of degree m(d-3) modulo the
// multiples of the curve equation, the canonical-ring quotient (distinct
// from the Jacobian-ring quotient, which divides by the derivatives).
template <class F>
class CanonicalSystem {
  public:
    CanonicalSystem(const F& field, const ring::BinaryForm<F>& f)
        : field_(field), d_(f.d), g_(static_cast<std::size_t>(f.d - 1) * (f.d - 2) / 2) {
        if (f.d < 4) throw DegreeTooSmall("plane model needs degree at least 4");
        curve_ = ring::zero_poly(field, 3, f.d);
        curve_.coeffs[ternary_index(f.d, f.d, 0)] = field.one();
        for (unsigned e0 = 0; e0 <= f.d; ++e0) {
            const std::size_t idx = ternary_index(f.d, 0, e0);
            curve_.coeffs[idx] = field.sub(curve_.coeffs[idx], f.coeffs[e0]);
        }
    }

    unsigned d() const { return d_; }
    std::size_t g() const { return g_; }
    const ring::HomoPoly<F>& curve() const { return curve_; }

    const ring::GradedQuotientPiece<F>& piece(unsigned m) const {
        auto it = cache_.find(m);
        if (it == cache_.end())
            it = cache_.emplace(m, ring::quotient_piece(field_, 3u, m * (d_ - 3), {curve_})).first;
        return it->second;
    }

    // class of (section in H^0(mK)) * (degree-(d-3) monomial) in H^0((m+1)K)
    std::vector<typename F::Elem> multiply(unsigned m, const std::vector<typename F::Elem>& cls,
                                           std::size_t mono) const {
        const auto lifted = piece(m).lift(field_, cls);
        const auto factor = ring::mono_poly(field_, 3, d_ - 3, mono);
        return piece(m + 1).normal_form(field_, ring::poly_mul(field_, lifted, factor).coeffs);
    }

  private:
    F field_;
    unsigned d_;
    std::size_t g_;
    ring::HomoPoly<F> curve_;
    mutable std::map<unsigned, ring::GradedQuotientPiece<F>> cache_;
};

// The degree-one multiplication table H^0(K) x H^0(K) -> H^0(2K) on the
// monomial basis of S^(d-3).
template <class F>
struct CanonicalMultTable {
    std::size_t dim_h0k = 0;
    std::size_t dim_h02k = 0;
    std::vector<std::vector<std::vector<typename F::Elem>>> table; // g x g -> H^0(2K) coords
};

template <class F>
CanonicalMultTable<F> canonical_mult_table_plane(const F& field, const ring::BinaryForm<F>& f) {
    CanonicalSystem<F> sys(field, f);
    const std::size_t g = sys.g();
    if (sys.piece(1).dim() != g) throw Error("H^0(K) dimension does not match the genus");
    CanonicalMultTable<F> out{g, sys.piece(2).dim(), {}};
    out.table.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
        std::vector<typename F::Elem> ei(g, field.zero());
        ei[i] = field.one();
        out.table[i].reserve(g);
        for (std::size_t j = 0; j < g; ++j) out.table[i].push_back(sys.multiply(1, ei, j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Koszul differential  /\^k V (x) Fiber -> /\^(k-1) V (x) Fiber',
//   e_A (x) v  |->  sum_t (-1)^t e_(A minus A[t]) (x) (A[t] . v),
// where "." is any multiplication V x Fiber -> Fiber'. Tensor indices pack
// as (combo rank) * fiber_dim + fiber index.
template <class F, class Mult>
la::DenseMatrix<F> koszul_differential_matrix(const F& field, std::size_t g, std::size_t k,
                                              std::size_t src_fiber, std::size_t dst_fiber,
                                              Mult&& mult) {
    if (k < 1 || k > g) throw OrderOutOfRange("koszul differential needs 1 <= k <= g");
    const std::size_t src_combos = binom(g, k), dst_combos = binom(g, k - 1);
    la::DenseMatrix<F> m =
        la::DenseMatrix<F>::zero(field, dst_combos * dst_fiber, src_combos * src_fiber);
    for (std::size_t ra = 0; ra < src_combos; ++ra) {
        const Combo a = combo_unrank(g, k, ra);
        for (std::size_t e = 0; e < src_fiber; ++e) {
            const std::size_t col = ra * src_fiber + e;
            for (std::size_t t = 0; t < k; ++t) {
                const std::size_t ra2 = combo_rank(g, combo_drop(a, t));
                const auto prod = mult(a[t], e);
                for (std::size_t r = 0; r < dst_fiber; ++r) {
                    if (field.is_zero(prod[r])) continue;
                    auto& cell = m.at(ra2 * dst_fiber + r, col);
                    cell = (t % 2 == 0) ? field.add(cell, prod[r]) : field.sub(cell, prod[r]);
                }
            }
        }
    }
    return m;
}

template <class F>
la::DenseMatrix<F> koszul_differential(const F& field, const CanonicalMultTable<F>& tab,
                                       std::size_t k) {
    return koszul_differential_matrix(field, tab.dim_h0k, k, tab.dim_h0k, tab.dim_h02k,
                                      [&](std::size_t a, std::size_t e) { return tab.table[a][e]; });
}

// The same differential one pluricanonical level up:
// /\^k H^0(K) (x) H^0(mK) -> /\^(k-1) H^0(K) (x) H^0((m+1)K).
template <class F>
la::DenseMatrix<F> pluricanonical_differential(const F& field, const CanonicalSystem<F>& sys,
                                               unsigned m, std::size_t k) {
    const std::size_t src_fiber = sys.piece(m).dim(), dst_fiber = sys.piece(m + 1).dim();
    return koszul_differential_matrix(field, sys.g(), k, src_fiber, dst_fiber,
                                      [&](std::size_t a, std::size_t e) {
                                          std::vector<typename F::Elem> ev(src_fiber, field.zero());
                                          ev[e] = field.one();
                                          return sys.multiply(m, ev, a);
                                      });
}

// /\^(k+1) V -> /\^k V (x) V,  e_B |-> sum_t (-1)^t e_(B minus B[t]) (x) e_(B[t]).
template <class F>
la::DenseMatrix<F> wedge_to_tensor(const F& field, std::size_t g, std::size_t k) {
    const std::size_t src = binom(g, k + 1), dst_combos = binom(g, k);
    la::DenseMatrix<F> m = la::DenseMatrix<F>::zero(field, dst_combos * g, src);
    for (std::size_t rb = 0; rb < src; ++rb) {
        const Combo b = combo_unrank(g, k + 1, rb);
        for (std::size_t t = 0; t < k + 1; ++t) {
            const std::size_t row = combo_rank(g, combo_drop(b, t)) * g + b[t];
            m.at(row, rb) = (t % 2 == 0) ? field.one() : field.neg(field.one());
        }
    }
    return m;
}

struct KoszulReport {
    std::size_t k = 0;
    std::size_t dim_kernel = 0;
    std::size_t dim_wedge_image = 0;
    bool wedge_inside_kernel = false;
    bool equal = false;
};

// Compares the kernel of the Koszul differential with the image of the
// wedge map. The wedge image always lies inside the kernel; `equal` asserts
// the two agree (verified via the inclusion plus a dimension count).
template <class F>
KoszulReport koszul_kernel_report(const F& field, const CanonicalMultTable<F>& tab,
                                  std::size_t k) {
    if (k < 1 || k > tab.dim_h0k) throw OrderOutOfRange("koszul report needs 1 <= k <= g");
    const auto diff = koszul_differential(field, tab, k);
    const auto wedge = wedge_to_tensor(field, tab.dim_h0k, k);
    KoszulReport rep;
    rep.k = k;
    rep.dim_kernel = diff.cols - la::rank(field, diff);
    rep.dim_wedge_image = la::rank(field, wedge);
    const auto composite = la::mat_mul(field, diff, wedge);
    rep.wedge_inside_kernel = true;
    for (const auto& x : composite.data)
        if (!field.is_zero(x)) rep.wedge_inside_kernel = false;
    rep.equal = rep.wedge_inside_kernel && rep.dim_kernel == rep.dim_wedge_image;
    return rep;
}

} // namespace ikv::koszul
