#pragma once
#include <fstream>
#include <string>

#include "json.hpp"

#include "ikv/errors.hpp"
#include "ikv/ikeda.hpp"
#include "ikv/version.hpp"

namespace ikv::report {

// All machine-readable output is ordered JSON rendered with a fixed
// indentation, so identical configurations produce byte-identical files.
using json = nlohmann::ordered_json;

inline json artifact_info() {
    return json{{"name", artifact_name}, {"version", artifact_version}};
}

inline json witness_to_json(const ikeda::CertificateWitness& w) {
    return json{{"check", w.check}, {"description", w.description}, {"coords", w.coords}};
}

inline json certificate_to_json(const ikeda::Certificate& c) {
    json witnesses = json::array();
    for (const auto& w : c.witnesses) witnesses.push_back(witness_to_json(w));
    return json{{"d", c.d},
                {"field", c.field_desc},
                {"f_digest", c.f_digest},
                {"lemma_i_pass", c.lemma_i_pass},
                {"lemma_ii_pass", c.lemma_ii_pass},
                {"det_lambda", c.det_lambda},
                {"kernel_membership_pass", c.kernel_membership_pass},
                {"eigenspace_dims",
                 json{{"h10_weight_d_minus_2", c.eig_h10_dim}, {"h01_weight_2", c.eig_h01_dim}}},
                {"annihilator_dim", c.annihilator_dim},
                {"verdict", c.verdict()},
                {"notes", c.notes},
                {"witnesses", witnesses}};
}

inline std::string render(const json& j) { return j.dump(2) + "\n"; }

inline void write_report(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write report file: " + path);
    out << render(j);
}

} // namespace ikv::report
