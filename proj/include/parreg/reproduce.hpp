#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parreg/classify.hpp"
#include "parreg/report.hpp"

namespace parreg {

struct RowOutcome {
    std::string id;
    bool pass = false;
    nlohmann::json expected;
    nlohmann::json actual;
};

/// Compact machine-comparable view of a verdict: statuses, rule tags, and
/// the primes behind R8/R9 certificates.
nlohmann::json summarize(const Verdict& v);

/// Evaluates one fixture row (kinds: equation, system, witness, survey,
/// joint). Throws std::invalid_argument on a malformed row.
nlohmann::json evaluate_row(const nlohmann::json& row, const RunConfig& config);

/// A row passes when every expected key equals the computed value.
std::vector<RowOutcome> run_regression(const nlohmann::json& fixture, const RunConfig& config);

} // namespace parreg
