#include "ikv/io.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "ikv/errors.hpp"

namespace ikv::io {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

FormFileData parse_form_json(const nlohmann::json& j) {
    FormFileData out;
    try {
        if (!j.is_object()) throw MalformedInput("form file: top level must be an object");
        if (!j.contains("d") || !j.at("d").is_number_integer())
            throw MalformedInput("form file: missing or non-integer \"d\"");
        const std::int64_t d = j.at("d").get<std::int64_t>();
        if (d < 4 || d > 64) throw MalformedInput("form file: d must be in [4, 64]");
        out.d = static_cast<unsigned>(d);
        if (!j.contains("field") || !j.at("field").is_string())
            throw MalformedInput("form file: missing \"field\"");
        out.field = FieldSpec::parse(j.at("field").get<std::string>());
        if (!j.contains("f_coeffs") || !j.at("f_coeffs").is_array())
            throw MalformedInput("form file: missing \"f_coeffs\" array");
        std::vector<bool> seen(out.d + 1, false);
        for (const auto& entry : j.at("f_coeffs")) {
            if (!entry.is_array() || entry.size() != 3)
                throw MalformedInput("form file: each f_coeffs entry must be [e0, e1, c]");
            if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
                throw MalformedInput("form file: exponents must be nonnegative integers");
            const std::int64_t e0 = entry[0].get<std::int64_t>();
            const std::int64_t e1 = entry[1].get<std::int64_t>();
            if (e0 < 0 || e1 < 0 || e0 + e1 != d)
                throw MalformedInput("form file: exponents of a term do not sum to d");
            if (seen[e0]) throw MalformedInput("form file: duplicate term X0^" + std::to_string(e0));
            seen[e0] = true;
            std::string lit;
            if (entry[2].is_number_integer())
                lit = std::to_string(entry[2].get<std::int64_t>());
            else if (entry[2].is_string())
                lit = entry[2].get<std::string>();
            else
                throw MalformedInput("form file: coefficient must be an integer or a string");
            out.coeffs.emplace_back(static_cast<unsigned>(e0), std::move(lit));
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("form file: ") + e.what());
    }
    return out;
}

FormFileData read_form_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open form file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput("form file is not valid JSON: " + std::string(e.what()));
    }
    return parse_form_json(j);
}

} // namespace ikv::io
