#pragma once

#include <string>

#include <json.hpp>

namespace khinchin {

// Machine-readable outcome of one lemma/claim check over a parameter grid.
// pass is min_margin > -slack; slack is 0 unless the property has exact
// equality cases that the spec allows (then it is recorded in the report).
struct VerificationReport {
    std::string lemma_id;
    nlohmann::json grid;
    bool pass = false;
    double min_margin = 0.0;
    nlohmann::json witness;
    double slack = 0.0;
};

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = nlohmann::json{{"lemma_id", r.lemma_id}, {"grid", r.grid},     {"pass", r.pass},
                       {"min_margin", r.min_margin}, {"witness", r.witness}, {"slack", r.slack}};
}

inline void from_json(const nlohmann::json& j, VerificationReport& r) {
    j.at("lemma_id").get_to(r.lemma_id);
    r.grid = j.value("grid", nlohmann::json::object());
    j.at("pass").get_to(r.pass);
    j.at("min_margin").get_to(r.min_margin);
    r.witness = j.value("witness", nlohmann::json::object());
    r.slack = j.value("slack", 0.0);
}

// Finalizes a report from the scanned minimum margin.
inline VerificationReport finish_report(std::string id, nlohmann::json grid, double min_margin,
                                        nlohmann::json witness, double slack = 0.0) {
    VerificationReport r;
    r.lemma_id = std::move(id);
    r.grid = std::move(grid);
    r.min_margin = min_margin;
    r.witness = std::move(witness);
    r.slack = slack;
    r.pass = min_margin > -slack;
    return r;
}

}  // namespace khinchin
