#include "ikv/fields.hpp"

namespace ikv {

FieldSpec FieldSpec::fp(std::uint64_t p) {
    if (p <= (1ull << 20) || !is_prime_u64(p))
        throw MalformedInput("field fp:<p> needs a prime p > 2^20, got " + std::to_string(p));
    return FieldSpec{Kind::prime_field, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "rationals") return rationals();
    if (s.rfind("fp:", 0) == 0) {
        std::uint64_t p = 0;
        try {
            std::size_t pos = 0;
            p = std::stoull(s.substr(3), &pos);
            if (pos != s.size() - 3) throw MalformedInput("");
        } catch (const std::exception&) {
            throw MalformedInput("bad field spec '" + s + "'");
        }
        return fp(p);
    }
    throw MalformedInput("bad field spec '" + s + "' (expected rationals or fp:<p>)");
}

std::string FieldSpec::to_string() const {
    return kind == Kind::rationals ? "rationals" : "fp:" + std::to_string(modulus);
}

} // namespace ikv
