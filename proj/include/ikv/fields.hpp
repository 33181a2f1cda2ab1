#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

#include "ikv/errors.hpp"
#include "ikv/rng.hpp"

namespace ikv {

// Exact scalar arithmetic comes in two flavors behind one duck-typed
// interface: arbitrary-precision rationals (audit path) and a prime field
// F_p (fast path). Linear algebra and everything above it is templated on
// the field type; elements are kept canonical at all times (lowest terms /
// least nonnegative residue).

class PrimeField {
  public:
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 3 || p >= (1ull << 62) || !is_prime_u64(p))
            throw MalformedInput("prime field modulus must be an odd prime below 2^62, got " + std::to_string(p));
    }

    std::uint64_t modulus() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b; // p < 2^62 keeps this from overflowing
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return detail::mulmod_u64(a, b, p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw Error("division by zero in F_p");
        // extended Euclid on (a, p)
        std::int64_t t = 0, newt = 1;
        std::uint64_t r = p_, newr = a;
        while (newr != 0) {
            std::uint64_t q = r / newr;
            std::int64_t tt = t - static_cast<std::int64_t>(q) * newt;
            t = newt;
            newt = tt;
            std::uint64_t rr = r - q * newr;
            r = newr;
            newr = rr;
        }
        return t < 0 ? static_cast<Elem>(t + static_cast<std::int64_t>(p_)) : static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(p_);
        if (m < 0) m += static_cast<std::int64_t>(p_);
        return static_cast<Elem>(m);
    }

    Elem random(Rng& rng) const { return rng.below(p_); }

    std::string to_string(Elem a) const { return std::to_string(a); }

  private:
    std::uint64_t p_;
};

class RationalField {
  public:
    using Elem = boost::multiprecision::mpq_rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return Elem(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return Elem(a - b); }
    Elem neg(const Elem& a) const { return Elem(-a); }
    Elem mul(const Elem& a, const Elem& b) const { return Elem(a * b); }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error("division by zero in Q");
        return Elem(1 / a);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const { return Elem(v); }

    // Coefficients for random inputs are drawn from small integers; the
    // interesting rationals appear through elimination, not sampling.
    Elem random(Rng& rng) const { return Elem(rng.range(-9, 9)); }

    std::string to_string(const Elem& a) const { return a.str(); }
};

// Parse "12", "-7" or "3/4" into a field element.
template <class F>
typename F::Elem elem_from_string(const F& field, const std::string& s) {
    auto parse_int = [](const std::string& t) -> std::int64_t {
        if (t.empty()) throw MalformedInput("empty coefficient");
        std::size_t pos = 0;
        std::int64_t v;
        try {
            v = std::stoll(t, &pos);
        } catch (const std::exception&) {
            throw MalformedInput("bad coefficient '" + t + "'");
        }
        if (pos != t.size()) throw MalformedInput("bad coefficient '" + t + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return field.from_int(parse_int(s));
    std::int64_t num = parse_int(s.substr(0, slash));
    std::int64_t den = parse_int(s.substr(slash + 1));
    if (den == 0) throw MalformedInput("zero denominator in '" + s + "'");
    return field.div(field.from_int(num), field.from_int(den));
}

// Runtime description of the coefficient field, as it appears in files,
// flags and reports ("rationals" or "fp:<p>").
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    std::uint64_t modulus = 0; // meaningful iff prime_field

    static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }
    static FieldSpec fp(std::uint64_t p);
    static FieldSpec parse(const std::string& s);
    std::string to_string() const;
    bool operator==(const FieldSpec&) const = default;
};

} // namespace ikv
