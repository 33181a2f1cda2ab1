#pragma once
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ikv/mat.hpp"
#include "ikv/rng.hpp"

namespace ikv::la {

// Reduced row echelon form computed by plain Gauss-Jordan over the exact
// field. `pivots[r]` is the pivot column of row r; zero rows are dropped.
template <class F>
struct RrefResult {
    DenseMatrix<F> mat;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

template <class F>
RrefResult<F> rref(const F& field, DenseMatrix<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && field.is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t c = col; c < m.cols; ++c) std::swap(m.at(row, c), m.at(sel, c));
        const auto piv_inv = field.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) = field.mul(piv_inv, m.at(row, c));
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || field.is_zero(m.at(r, col))) continue;
            const auto factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = field.sub(m.at(r, c), field.mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    DenseMatrix<F> out = DenseMatrix<F>::zero(field, pivots.size(), m.cols);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.cols; ++c) out.at(r, c) = m.at(r, c);
    return RrefResult<F>{std::move(out), std::move(pivots)};
}

template <class F>
std::size_t rank(const F& field, const DenseMatrix<F>& m) {
    return rref(field, m).rank();
}

// Basis of {x : M x = 0}, one vector per row of the result. For each
// non-pivot column c the basis vector has a 1 at c and back-substituted
// entries at the pivot columns; this makes the basis canonical given M.
template <class F>
DenseMatrix<F> kernel(const F& field, const DenseMatrix<F>& m) {
    const std::size_t n = m.cols;
    RrefResult<F> e = rref(field, m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    DenseMatrix<F> out = DenseMatrix<F>::zero(field, n - e.rank(), n);
    std::size_t k = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        out.at(k, c) = field.one();
        for (std::size_t r = 0; r < e.rank(); ++r)
            out.at(k, e.pivots[r]) = field.neg(e.mat.at(r, c));
        ++k;
    }
    return out;
}

// One solution of A x = b (free variables set to zero), or nullopt.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& field, const DenseMatrix<F>& a,
                                                   const std::vector<typename F::Elem>& b) {
    if (a.rows != b.size()) throw Error("solve: shape mismatch");
    DenseMatrix<F> aug = DenseMatrix<F>::zero(field, a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    RrefResult<F> e = rref(field, std::move(aug));
    std::vector<typename F::Elem> x(a.cols, field.zero());
    for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.pivots[r] == a.cols) return std::nullopt; // inconsistent system
        x[e.pivots[r]] = e.mat.at(r, a.cols);
    }
    return x;
}

// A linear subspace of F^ambient held as an RREF basis. Reduction against
// the basis zeroes the pivot coordinates, so `reduce` yields the canonical
// representative of v modulo the subspace and `contains` tests reduce == 0.
template <class F>
struct Subspace {
    std::size_t ambient = 0;
    DenseMatrix<F> basis; // RREF rows
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return basis.rows; }

    std::vector<typename F::Elem> reduce(const F& field, std::vector<typename F::Elem> v) const {
        if (v.size() != ambient) throw Error("Subspace::reduce: length mismatch");
        for (std::size_t r = 0; r < basis.rows; ++r) {
            const auto& coef = v[pivots[r]];
            if (field.is_zero(coef)) continue;
            const auto c0 = coef; // v[pivots[r]] mutates inside the loop
            for (std::size_t c = pivots[r]; c < ambient; ++c)
                v[c] = field.sub(v[c], field.mul(c0, basis.at(r, c)));
        }
        return v;
    }

    bool contains(const F& field, const std::vector<typename F::Elem>& v) const {
        return vec_is_zero(field, reduce(field, v));
    }
};

template <class F>
Subspace<F> row_space(const F& field, const DenseMatrix<F>& m) {
    RrefResult<F> e = rref(field, m);
    return Subspace<F>{m.cols, std::move(e.mat), std::move(e.pivots)};
}

// Column span of M, i.e. the image of x -> M x.
template <class F>
Subspace<F> image(const F& field, const DenseMatrix<F>& m) {
    return row_space(field, transpose(field, m));
}

// F^ambient / denom with canonical coordinates: reduce kills the pivot
// entries of the denominator basis, and the surviving non-pivot entries are
// the quotient coordinates. Unit vectors at `coset_cols` are coset
// representatives of the quotient basis.
template <class F>
struct QuotientSpace {
    std::size_t ambient = 0;
    Subspace<F> denom;
    std::vector<std::size_t> coset_cols; // ascending non-pivot columns

    std::size_t dim() const { return coset_cols.size(); }

    std::vector<typename F::Elem> project(const F& field, std::vector<typename F::Elem> v) const {
        v = denom.reduce(field, std::move(v));
        std::vector<typename F::Elem> out;
        out.reserve(coset_cols.size());
        for (std::size_t c : coset_cols) out.push_back(v[c]);
        return out;
    }
};

template <class F>
QuotientSpace<F> quotient(const F& field, std::size_t ambient, Subspace<F> denom) {
    (void)field;
    if (denom.ambient != ambient) throw Error("quotient: ambient mismatch");
    std::vector<bool> is_pivot(ambient, false);
    for (std::size_t p : denom.pivots) is_pivot[p] = true;
    std::vector<std::size_t> coset;
    for (std::size_t c = 0; c < ambient; ++c)
        if (!is_pivot[c]) coset.push_back(c);
    return QuotientSpace<F>{ambient, std::move(denom), std::move(coset)};
}

// ---------------------------------------------------------------------------
// Sparse rows and a certified kernel for large systems.

template <class F>
struct SparseVec {
    // (index, value) pairs with strictly increasing indices, values nonzero.
    std::vector<std::pair<std::size_t, typename F::Elem>> entries;

    void add_term(const F& field, std::size_t i, typename F::Elem v) {
        if (!field.is_zero(v)) entries.emplace_back(i, std::move(v));
    }
};

template <class F>
typename F::Elem sparse_dot(const F& field, const SparseVec<F>& s,
                            const std::vector<typename F::Elem>& v) {
    auto acc = field.zero();
    for (const auto& [i, c] : s.entries) acc = field.add(acc, field.mul(c, v[i]));
    return acc;
}

// Kernel of {r . x = 0 : r in rows} in F^ncols. For row counts near or
// below ncols this densifies directly. Above that it eliminates a random
// sparse compression S of the rows instead: ker(S M) contains ker(M) for
// every S, so the candidate kernel is checked against every original row
// and violated rows are appended until the check is clean. The result is
// exact for any random choices; randomness only affects how many rounds
// the loop takes (almost always one).
template <class F>
DenseMatrix<F> kernel_of_rows(const F& field, const std::vector<SparseVec<F>>& rows,
                              std::size_t ncols, Rng& rng) {
    const std::size_t pad = 16;
    if (rows.size() <= ncols + pad || rows.size() * ncols <= 2'000'000) {
        DenseMatrix<F> m = DenseMatrix<F>::zero(field, rows.size(), ncols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [i, c] : rows[r].entries) m.at(r, i) = c;
        return kernel(field, m);
    }

    const std::size_t ncomp = ncols + pad;
    DenseMatrix<F> comp = DenseMatrix<F>::zero(field, ncomp, ncols);
    for (const auto& row : rows) {
        // scatter each row into two random compressed rows with random
        // nonzero weights; S is never materialized
        for (int rep = 0; rep < 2; ++rep) {
            const std::size_t target = rng.below(ncomp);
            auto weight = field.random(rng);
            if (field.is_zero(weight)) weight = field.one();
            for (const auto& [i, c] : row.entries)
                comp.at(target, i) = field.add(comp.at(target, i), field.mul(weight, c));
        }
    }

    for (;;) {
        DenseMatrix<F> ker = kernel(field, comp);
        std::vector<std::size_t> violated;
        for (std::size_t r = 0; r < rows.size() && violated.size() < pad; ++r) {
            for (std::size_t k = 0; k < ker.rows; ++k) {
                if (!field.is_zero(sparse_dot(field, rows[r], ker.row(k)))) {
                    violated.push_back(r);
                    break;
                }
            }
        }
        if (violated.empty()) return ker;
        for (std::size_t r : violated) {
            std::vector<typename F::Elem> dense(ncols, field.zero());
            for (const auto& [i, c] : rows[r].entries) dense[i] = c;
            comp.append_row(dense);
        }
    }
}

} // namespace ikv::la
