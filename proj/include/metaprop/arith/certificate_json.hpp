#pragma once

// JSON documents for certificates. Schema version 1:
//   { "schema": "metaprop.certificate", "version": 1, "kind": ...,
//     "conclusion": <formula text>, "witnesses": [<decimal>...],
//     "cited_axioms": [{"scheme": "Ax1", "params": [<decimal>...], "sentence": <text>}...] }
// Naturals are decimal strings since they outgrow 64 bits.

#include "metaprop/arith/certificate.hpp"
#include "metaprop/logic/text.hpp"

#include <json.hpp>

namespace metaprop::arith {

inline constexpr int certificate_schema_version = 1;

inline nlohmann::json to_json(const Certificate& c) {
    nlohmann::json axioms = nlohmann::json::array();
    for (const auto& a : c.cited_axioms) {
        nlohmann::json params = nlohmann::json::array();
        for (const auto& p : a.params)
            params.push_back(metaprop::to_string(p));
        axioms.push_back({{"scheme", to_string(a.scheme)}, {"params", params}, {"sentence", print(a.sentence)}});
    }
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : c.witnesses)
        witnesses.push_back(metaprop::to_string(w));
    return {{"schema", "metaprop.certificate"},
            {"version", certificate_schema_version},
            {"kind", to_string(c.kind)},
            {"conclusion", print(c.conclusion)},
            {"witnesses", witnesses},
            {"cited_axioms", axioms}};
}

// Rebuilds the certificate as written; it still has to pass check_certificate.
inline Certificate certificate_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "metaprop.certificate" || j.value("version", 0) != certificate_schema_version)
        throw Error("not a version-1 certificate document");
    Certificate c;
    c.conclusion = parse(j.at("conclusion").get<std::string>());
    std::string kind = j.at("kind");
    bool known = false;
    for (auto k : {Kind::sigma1_truth, Kind::comparison_refutation, Kind::function_definition, Kind::strong_rep})
        if (kind == to_string(k)) {
            c.kind = k;
            known = true;
        }
    if (!known)
        throw Error("unknown certificate kind: " + kind);
    for (const auto& w : j.at("witnesses"))
        c.witnesses.push_back(parse_natural(w.get<std::string>()));
    for (const auto& a : j.at("cited_axioms")) {
        auto s = scheme_from_string(a.at("scheme"));
        if (!s)
            throw Error("unknown axiom scheme");
        AxiomInstance inst{*s, {}, parse(a.at("sentence").get<std::string>())};
        for (const auto& p : a.at("params"))
            inst.params.push_back(parse_natural(p.get<std::string>()));
        c.cited_axioms.push_back(std::move(inst));
    }
    return c;
}

}  // namespace metaprop::arith
