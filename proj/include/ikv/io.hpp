#pragma once
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ikv/fields.hpp"
#include "ikv/polyring.hpp"

namespace ikv::io {

std::uint64_t fnv1a64(std::string_view s);
std::string hex64(std::uint64_t v);

// Canonical serialization of a form, digested into the report so runs on
// the same input can be matched up.
template <class F>
std::string canonical_form_string(const F& field, const ring::BinaryForm<F>& f) {
    std::string s = "d=" + std::to_string(f.d) + ";c=";
    for (unsigned e0 = 0; e0 <= f.d; ++e0) {
        if (e0 > 0) s += ",";
        s += field.to_string(f.coeffs[e0]);
    }
    return s;
}

template <class F>
std::string form_digest(const F& field, const ring::BinaryForm<F>& f) {
    return hex64(fnv1a64(canonical_form_string(field, f)));
}

// ---------------------------------------------------------------------------
// Polynomial input files: {"d": <int>, "field": "rationals"|"fp:<p>",
// "f_coeffs": [[e0, e1, c], ...]} with e0 + e1 = d and integer or
// "num[/den]" string coefficients. Parsed field-agnostically so the field
// choice can be overridden before coefficients are realized.

struct FormFileData {
    unsigned d = 0;
    FieldSpec field;
    std::vector<std::pair<unsigned, std::string>> coeffs; // (e0, literal)
};

FormFileData parse_form_json(const nlohmann::json& j);
FormFileData read_form_file(const std::string& path);

template <class F>
ring::BinaryForm<F> realize_form(const F& field, const FormFileData& data) {
    ring::BinaryForm<F> f{data.d,
                          std::vector<typename F::Elem>(data.d + 1, field.zero())};
    for (const auto& [e0, lit] : data.coeffs) f.coeffs[e0] = elem_from_string(field, lit);
    return f;
}

// Draws coefficient vectors until the form is squarefree; the rejection
// count is surfaced so reports stay reproducible.
template <class F>
ring::BinaryForm<F> random_smooth_form(const F& field, unsigned d, Rng& rng,
                                       std::size_t& rejections) {
    if (d < 4) throw DegreeTooSmall("random form needs degree at least 4");
    rejections = 0;
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ring::BinaryForm<F> f{d, {}};
        f.coeffs.reserve(d + 1);
        for (unsigned i = 0; i <= d; ++i) f.coeffs.push_back(field.random(rng));
        if (ring::smoothness_check_binary(field, f)) return f;
        ++rejections;
    }
    throw Error("failed to sample a squarefree form (field too small?)");
}

} // namespace ikv::io
