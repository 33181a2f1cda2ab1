#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ikv/errors.hpp"

namespace ikv {

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i; // exact at every step
    return r;
}

// ---------------------------------------------------------------------------
// Monomial bases. All graded pieces are indexed by fixed enumerations of the
// monomials of that degree, so vectors of coefficients are the only runtime
// representation of polynomials.
//
// Binary monomials of degree deg in X0, X1: index i holds X0^(deg-i) X1^i,
// i.e. descending X0 power (lex with X0 > X1).
//
// Ternary monomials of degree deg in Y, X0, X1: lex with Y > X0 > X1,
// descending, so Y^deg comes first. With y + x0 + x1 = deg the index is
// determined by (y, x0).

inline std::size_t binary_count(unsigned deg) { return deg + 1; }

inline std::size_t ternary_count(unsigned deg) {
    return static_cast<std::size_t>(deg + 1) * (deg + 2) / 2;
}

struct TernaryMono {
    unsigned y = 0, x0 = 0, x1 = 0;
    bool operator==(const TernaryMono&) const = default;
};

std::size_t ternary_index(unsigned deg, unsigned y, unsigned x0);
TernaryMono ternary_mono(unsigned deg, std::size_t idx);
std::string binary_mono_string(unsigned deg, std::size_t idx);
std::string ternary_mono_string(const TernaryMono& m);

// ---------------------------------------------------------------------------
// k-subsets of {0..n-1} as strictly increasing index tuples, enumerated in
// lexicographic order. Wedge and tensor bases are indexed this way.

using Combo = std::vector<std::size_t>;

std::size_t combo_rank(std::size_t n, const Combo& c);
Combo combo_unrank(std::size_t n, std::size_t k, std::size_t rank);

// c with position i removed.
Combo combo_drop(const Combo& c, std::size_t i);

// Insert value v into sorted tuple c. Returns the position it landed at,
// or nullopt if v already occurs (the wedge vanishes).
std::optional<std::size_t> combo_insert(Combo& c, std::size_t v);

} // namespace ikv
