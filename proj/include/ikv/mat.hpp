#pragma once
#include <cstddef>
#include <vector>

#include "ikv/errors.hpp"

namespace ikv::la {

// Dense row-major matrix over an exact field. The field object travels
// separately (it may carry state, e.g. the modulus), so operations take it
// as their first argument.
template <class F>
struct DenseMatrix {
    using Elem = typename F::Elem;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> data; // rows * cols entries, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, Elem fill) : rows(r), cols(c), data(r * c, fill) {}

    static DenseMatrix zero(const F& field, std::size_t r, std::size_t c) {
        return DenseMatrix(r, c, field.zero());
    }
    static DenseMatrix identity(const F& field, std::size_t n) {
        DenseMatrix m = zero(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    Elem& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Elem& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::vector<Elem> row(std::size_t r) const {
        return std::vector<Elem>(data.begin() + r * cols, data.begin() + (r + 1) * cols);
    }
    void set_row(std::size_t r, const std::vector<Elem>& v) {
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = v[c];
    }

    void append_row(const std::vector<Elem>& v) {
        if (v.size() != cols && rows != 0) throw Error("append_row: width mismatch");
        if (rows == 0 && cols == 0) cols = v.size();
        data.insert(data.end(), v.begin(), v.end());
        ++rows;
    }

    bool equal(const F& field, const DenseMatrix& other) const {
        if (rows != other.rows || cols != other.cols) return false;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!field.eq(data[i], other.data[i])) return false;
        return true;
    }
};

template <class F>
DenseMatrix<F> transpose(const F& field, const DenseMatrix<F>& m) {
    DenseMatrix<F> t = DenseMatrix<F>::zero(field, m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

template <class F>
DenseMatrix<F> mat_mul(const F& field, const DenseMatrix<F>& a, const DenseMatrix<F>& b) {
    if (a.cols != b.rows) throw Error("mat_mul: shape mismatch");
    DenseMatrix<F> c = DenseMatrix<F>::zero(field, a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const auto& aik = a.at(i, k);
            if (field.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                c.at(i, j) = field.add(c.at(i, j), field.mul(aik, b.at(k, j)));
        }
    return c;
}

template <class F>
std::vector<typename F::Elem> mat_vec(const F& field, const DenseMatrix<F>& a,
                                      const std::vector<typename F::Elem>& v) {
    if (a.cols != v.size()) throw Error("mat_vec: shape mismatch");
    std::vector<typename F::Elem> out(a.rows, field.zero());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k)
            if (!field.is_zero(a.at(i, k))) out[i] = field.add(out[i], field.mul(a.at(i, k), v[k]));
    return out;
}

template <class F>
std::vector<typename F::Elem> vec_add(const F& field, std::vector<typename F::Elem> a,
                                      const std::vector<typename F::Elem>& b) {
    if (a.size() != b.size()) throw Error("vec_add: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = field.add(a[i], b[i]);
    return a;
}

template <class F>
std::vector<typename F::Elem> vec_scale(const F& field, const typename F::Elem& s,
                                        std::vector<typename F::Elem> v) {
    for (auto& x : v) x = field.mul(s, x);
    return v;
}

template <class F>
std::vector<typename F::Elem> vec_axpy(const F& field, const typename F::Elem& s,
                                       const std::vector<typename F::Elem>& x,
                                       std::vector<typename F::Elem> y) {
    if (x.size() != y.size()) throw Error("vec_axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = field.add(y[i], field.mul(s, x[i]));
    return y;
}

template <class F>
bool vec_is_zero(const F& field, const std::vector<typename F::Elem>& v) {
    for (const auto& x : v)
        if (!field.is_zero(x)) return false;
    return true;
}

template <class F>
bool vec_eq(const F& field, const std::vector<typename F::Elem>& a,
            const std::vector<typename F::Elem>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!field.eq(a[i], b[i])) return false;
    return true;
}

} // namespace ikv::la
