#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "parreg/arith.hpp"
#include "parreg/classify.hpp"
#include "parreg/coloring.hpp"
#include "parreg/density.hpp"
#include "parreg/radolinear.hpp"
#include "parreg/witness.hpp"

namespace parreg {

inline constexpr const char* kReportSchema = "parreg-report/1";

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::uint64_t witness_bound = 1'000'000;
    std::int64_t box_half_width = 300;
    FactorBudget factor_budget;
    std::uint64_t sieve_bound = 100'000;
    OutputFormat output = OutputFormat::Text;
    unsigned threads = 1;
    std::optional<std::string> sieve_cache;

    /// Throws std::invalid_argument when a bound is not positive.
    void validate() const;
    ClassifyConfig classify_config() const;
};

nlohmann::json to_json(const RunConfig& config);

nlohmann::json to_json(const WitnessPrime& w);
WitnessPrime witness_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SystemSpec& s);
SystemSpec system_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Verdict& v);
/// Throws std::invalid_argument on malformed input.
Verdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HypothesisReport& h);
nlohmann::json to_json(const MonoReport& r);
nlohmann::json to_json(const ColumnsCertificate& c);
nlohmann::json to_json(const DensitySurvey& s);
nlohmann::json to_json(const JointSurvey& s);

/// {"schema", "kind", "config", "result"} envelope.
nlohmann::json make_report(const std::string& kind, const RunConfig& config, nlohmann::json result);

std::string describe(const Certificate& c);
std::string render_text(const Verdict& v);

} // namespace parreg
