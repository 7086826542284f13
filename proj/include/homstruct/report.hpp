// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace homstruct {

inline constexpr const char* kToolVersion = "0.1.0";

struct FamilyReport {
    std::string label;
    std::vector<std::string> free_params;
    std::vector<std::string> forced_zero;
    bool operator==(const FamilyReport&) const = default;
};

struct OriginEntry {
    int i = 0, j = 0, k = 0;
    double value = 0.0;
    bool operator==(const OriginEntry&) const = default;
};

struct OriginTensorReport {
    std::vector<std::string> frame;
    std::vector<OriginEntry> entries;
    bool operator==(const OriginTensorReport&) const = default;
};

struct ASReport {
    double nabla_g = 0.0;
    double nabla_R = 0.0;
    double nabla_T = 0.0;
    bool pass = true;
    bool operator==(const ASReport&) const = default;
};

struct IsomReport {
    double lambda = 0.0;
    double mu = 0.0;
    std::string verdict;
    std::optional<std::string> witness;
    bool operator==(const IsomReport&) const = default;
};

/// One machine-readable report; every key of the schema is always present.
struct ReportDocument {
    std::string version = kToolVersion;
    std::string command;
    std::string space;
    std::string coset;
    std::vector<FamilyReport> families;
    OriginTensorReport origin_tensor;
    ASReport as_residuals;
    IsomReport isomorphism;
    bool operator==(const ReportDocument&) const = default;
};

inline void to_json(nlohmann::json& j, const FamilyReport& f) {
    j = nlohmann::json{
        {"label", f.label}, {"free_params", f.free_params}, {"forced_zero", f.forced_zero}};
}
inline void from_json(const nlohmann::json& j, FamilyReport& f) {
    j.at("label").get_to(f.label);
    j.at("free_params").get_to(f.free_params);
    j.at("forced_zero").get_to(f.forced_zero);
}

inline void to_json(nlohmann::json& j, const OriginEntry& e) {
    j = nlohmann::json{{"i", e.i}, {"j", e.j}, {"k", e.k}, {"value", e.value}};
}
inline void from_json(const nlohmann::json& j, OriginEntry& e) {
    j.at("i").get_to(e.i);
    j.at("j").get_to(e.j);
    j.at("k").get_to(e.k);
    j.at("value").get_to(e.value);
}

inline void to_json(nlohmann::json& j, const OriginTensorReport& t) {
    j = nlohmann::json{{"frame", t.frame}, {"entries", t.entries}};
}
inline void from_json(const nlohmann::json& j, OriginTensorReport& t) {
    j.at("frame").get_to(t.frame);
    j.at("entries").get_to(t.entries);
}

inline void to_json(nlohmann::json& j, const ASReport& r) {
    j = nlohmann::json{
        {"nabla_g", r.nabla_g}, {"nabla_R", r.nabla_R}, {"nabla_T", r.nabla_T}, {"pass", r.pass}};
}
inline void from_json(const nlohmann::json& j, ASReport& r) {
    j.at("nabla_g").get_to(r.nabla_g);
    j.at("nabla_R").get_to(r.nabla_R);
    j.at("nabla_T").get_to(r.nabla_T);
    j.at("pass").get_to(r.pass);
}

inline void to_json(nlohmann::json& j, const IsomReport& r) {
    j = nlohmann::json{{"lambda", r.lambda}, {"mu", r.mu}, {"verdict", r.verdict}};
    if (r.witness)
        j["witness"] = *r.witness;
    else
        j["witness"] = nullptr;
}
inline void from_json(const nlohmann::json& j, IsomReport& r) {
    j.at("lambda").get_to(r.lambda);
    j.at("mu").get_to(r.mu);
    j.at("verdict").get_to(r.verdict);
    if (j.at("witness").is_null())
        r.witness.reset();
    else
        r.witness = j.at("witness").get<std::string>();
}

inline void to_json(nlohmann::json& j, const ReportDocument& d) {
    j = nlohmann::json{{"version", d.version},
                       {"command", d.command},
                       {"space", d.space},
                       {"coset", d.coset},
                       {"families", d.families},
                       {"origin_tensor", d.origin_tensor},
                       {"as_residuals", d.as_residuals},
                       {"isomorphism", d.isomorphism}};
}
inline void from_json(const nlohmann::json& j, ReportDocument& d) {
    j.at("version").get_to(d.version);
    j.at("command").get_to(d.command);
    j.at("space").get_to(d.space);
    j.at("coset").get_to(d.coset);
    j.at("families").get_to(d.families);
    j.at("origin_tensor").get_to(d.origin_tensor);
    j.at("as_residuals").get_to(d.as_residuals);
    j.at("isomorphism").get_to(d.isomorphism);
}

inline std::string serialize_documents(const std::vector<ReportDocument>& docs) {
    if (docs.size() == 1) return nlohmann::json(docs.front()).dump(2) + "\n";
    return nlohmann::json(docs).dump(2) + "\n";
}

} // namespace homstruct
