#pragma once
#include <cstddef>
#include <vector>

#include "ikv/fields.hpp"
#include "ikv/io.hpp"
#include "ikv/mat.hpp"
#include "ikv/rng.hpp"

namespace ikv::test {

// Fixed desk-scale prime for unit tests; acceptance draws fresh primes.
inline PrimeField fp() { return PrimeField(1000003); }

template <class F>
la::DenseMatrix<F> random_matrix(const F& field, Rng& rng, std::size_t rows, std::size_t cols) {
    la::DenseMatrix<F> m = la::DenseMatrix<F>::zero(field, rows, cols);
    for (auto& x : m.data) x = field.random(rng);
    return m;
}

template <class F>
std::vector<typename F::Elem> random_vec(const F& field, Rng& rng, std::size_t n) {
    std::vector<typename F::Elem> v(n);
    for (auto& x : v) x = field.random(rng);
    return v;
}

template <class F>
ring::BinaryForm<F> random_smooth(const F& field, unsigned d, Rng& rng) {
    std::size_t rejections = 0;
    return io::random_smooth_form(field, d, rng, rejections);
}

// Form with integer coefficients, realizable over any field.
template <class F>
ring::BinaryForm<F> form_from_ints(const F& field, const std::vector<int>& by_e0) {
    ring::BinaryForm<F> f{static_cast<unsigned>(by_e0.size() - 1), {}};
    f.coeffs.reserve(by_e0.size());
    for (int c : by_e0) f.coeffs.push_back(field.from_int(c));
    return f;
}

} // namespace ikv::test
