#include "ikv/monomials.hpp"

namespace ikv {

std::size_t ternary_index(unsigned deg, unsigned y, unsigned x0) {
    if (y + x0 > deg) throw OrderOutOfRange("ternary_index: exponents exceed degree");
    const std::size_t block = deg - y; // monomials with larger y precede this block
    return block * (block + 1) / 2 + (block - x0);
}

TernaryMono ternary_mono(unsigned deg, std::size_t idx) {
    if (idx >= ternary_count(deg)) throw OrderOutOfRange("ternary_mono: index out of range");
    for (unsigned y = deg;; --y) {
        const std::size_t block = deg - y;
        const std::size_t start = block * (block + 1) / 2;
        if (idx <= start + block) {
            const unsigned x0 = static_cast<unsigned>(block - (idx - start));
            return TernaryMono{y, x0, deg - y - x0};
        }
    }
}

namespace {

void append_power(std::string& s, const char* name, unsigned e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += name;
    if (e > 1) s += "^" + std::to_string(e);
}

} // namespace

std::string binary_mono_string(unsigned deg, std::size_t idx) {
    const unsigned x1 = static_cast<unsigned>(idx);
    std::string s;
    append_power(s, "X0", deg - x1);
    append_power(s, "X1", x1);
    return s.empty() ? "1" : s;
}

std::string ternary_mono_string(const TernaryMono& m) {
    std::string s;
    append_power(s, "Y", m.y);
    append_power(s, "X0", m.x0);
    append_power(s, "X1", m.x1);
    return s.empty() ? "1" : s;
}

std::size_t combo_rank(std::size_t n, const Combo& c) {
    const std::size_t k = c.size();
    std::size_t rank = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = prev; j < c[i]; ++j) rank += binom(n - 1 - j, k - 1 - i);
        prev = c[i] + 1;
    }
    return rank;
}

Combo combo_unrank(std::size_t n, std::size_t k, std::size_t rank) {
    if (rank >= binom(n, k)) throw OrderOutOfRange("combo_unrank: rank out of range");
    Combo c(k);
    std::size_t x = 0;
    for (std::size_t i = 0; i < k; ++i) {
        while (true) {
            const std::size_t below = binom(n - 1 - x, k - 1 - i);
            if (rank < below) break;
            rank -= below;
            ++x;
        }
        c[i] = x++;
    }
    return c;
}

Combo combo_drop(const Combo& c, std::size_t i) {
    Combo out;
    out.reserve(c.size() - 1);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (j != i) out.push_back(c[j]);
    return out;
}

std::optional<std::size_t> combo_insert(Combo& c, std::size_t v) {
    std::size_t pos = 0;
    while (pos < c.size() && c[pos] < v) ++pos;
    if (pos < c.size() && c[pos] == v) return std::nullopt;
    c.insert(c.begin() + pos, v);
    return pos;
}

} // namespace ikv
