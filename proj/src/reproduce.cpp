#include "parreg/reproduce.hpp"

#include <stdexcept>

#include "parreg/density.hpp"
#include "parreg/witness.hpp"

namespace parreg {

using nlohmann::json;

namespace {

std::vector<Rat> rats(const json& j) {
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(Rat::parse(v.get<std::string>()));
    return out;
}

json rat_strings(const std::vector<Rat>& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(v.str());
    return arr;
}

SystemSpec system_of(const json& row) {
    std::vector<SystemRow> rows;
    for (const auto& r : row.at("rows")) {
        rows.push_back({r.at(0).get<std::int64_t>(), r.at(1).get<std::int64_t>(), r.at(2).get<std::int64_t>()});
    }
    if (row.contains("drop")) {
        const auto drop = row.at("drop").get<std::size_t>();
        if (drop == 0 || drop > rows.size()) throw std::invalid_argument("drop index out of range");
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(drop - 1));
    }
    return SystemSpec::make(std::move(rows), row.at("n").get<unsigned>());
}

} // namespace

json summarize(const Verdict& v) {
    json out = {{"N", to_string(v.status(Domain::N))},
                {"Z", to_string(v.status(Domain::Z))},
                {"Q", to_string(v.status(Domain::Q))},
                {"rules", v.rules()},
                {"reason", to_string(v.reason())}};
    for (const auto& c : v.certificates()) {
        if (const auto* o = std::get_if<PadicObstruction>(&c.body)) out["padic_prime"] = o->p;
        if (const auto* w = std::get_if<WitnessCertificate>(&c.body)) out["witness_prime"] = w->witness.p;
        if (const auto* s = std::get_if<SystemWitnessCertificate>(&c.body)) out["witness_prime"] = s->witness.witness.p;
    }
    out["reverified"] = reverify(v);
    return out;
}

json evaluate_row(const json& row, const RunConfig& config) {
    const auto kind = row.at("kind").get<std::string>();
    if (kind == "equation") {
        const auto& e = row.at("equation");
        auto eq = EquationSpec::make(e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>(), e.at(2).get<std::int64_t>(),
                                     e.at(3).get<unsigned>(), e.at(4).get<unsigned>());
        return summarize(classify_equation(eq, config.classify_config()));
    }
    if (kind == "system") {
        auto sys = system_of(row);
        json out = summarize(classify_system(sys, config.classify_config()));
        out["intersection"] = rat_strings(sys.ratio_intersection());
        return out;
    }
    if (kind == "witness") {
        auto targets = rats(row.at("targets"));
        SearchOptions opts{row.value("bound", config.witness_bound), config.threads};
        const BigInt lower(std::to_string(row.value("min", 0)), 10);
        auto w = find_witness_prime(targets, row.at("n").get<unsigned>(), lower, opts);
        json out = {{"p", w ? json(w->p) : json(nullptr)}};
        if (w) out["reverified"] = reverify(*w, true);
        return out;
    }
    if (kind == "survey") {
        auto s = survey(Rat::parse(row.at("target").get<std::string>()), row.at("n").get<unsigned>(),
                        row.value("bound", config.sieve_bound), config.threads);
        return {{"density", s.density().str()}, {"admissible", s.admissible_count}, {"hits", s.hit_count}};
    }
    if (kind == "joint") {
        auto targets = rats(row.at("targets"));
        const unsigned n = row.at("n").get<unsigned>();
        const std::uint64_t bound = row.value("bound", config.sieve_bound);
        auto js = joint_survey(targets, n, bound, config.threads);
        json out = {{"none", js.none},
                    {"at_least_one", js.at_least_one},
                    {"admissible", js.admissible_count},
                    {"inclusion_exclusion_holds", js.inclusion_exclusion_holds()}};
        if (row.contains("residue_claim")) {
            // Hit set of one target compared with the admissible primes outside one residue class.
            const auto& claim = row.at("residue_claim");
            const auto target = claim.at("target").get<std::size_t>();
            const auto modulus = claim.at("modulus").get<std::uint64_t>();
            const auto excluded = claim.at("excluded").get<std::uint64_t>();
            std::uint64_t disagreements = 0;
            for (const auto& rec : prime_records(targets, n, bound, config.threads)) {
                const bool predicted = rec.p % modulus != excluded;
                if (predicted != rec.hits.at(target)) ++disagreements;
            }
            out["residue_claim"] = disagreements == 0;
            out["residue_disagreements"] = disagreements;
        }
        return out;
    }
    throw std::invalid_argument("unknown regression row kind '" + kind + "'");
}

std::vector<RowOutcome> run_regression(const json& fixture, const RunConfig& config) {
    std::vector<RowOutcome> outcomes;
    for (const auto& row : fixture.at("rows")) {
        RowOutcome o;
        o.id = row.at("id").get<std::string>();
        o.expected = row.at("expect");
        o.actual = evaluate_row(row, config);
        o.pass = true;
        for (const auto& [key, value] : o.expected.items()) {
            if (!o.actual.contains(key) || o.actual.at(key) != value) o.pass = false;
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

} // namespace parreg
