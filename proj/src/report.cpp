#include "parreg/report.hpp"

#include <sstream>
#include <stdexcept>

namespace parreg {

using nlohmann::json;

namespace {

json rat_json(const Rat& q) { return q.str(); }

Rat rat_from(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("expected a rational string");
    return Rat::parse(j.get<std::string>());
}

json rats_json(const auto& values) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(rat_json(v));
    return arr;
}

std::vector<Rat> rats_from(const json& j) {
    std::vector<Rat> out;
    for (const auto& v : j) out.push_back(rat_from(v));
    return out;
}

std::array<Rat, 3> triple_from(const json& j) {
    auto v = rats_from(j);
    if (v.size() != 3) throw std::invalid_argument("expected three ratios");
    return {v[0], v[1], v[2]};
}

json opt_rat(const std::optional<Rat>& q) { return q ? rat_json(*q) : json(nullptr); }

std::optional<Rat> opt_rat_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return rat_from(j);
}

json system_witness_json(const SystemWitness& w) {
    return {{"witness", to_json(w.witness)},
            {"coefficients_are_units", w.coefficients_are_units},
            {"union_members_distinct", w.union_members_distinct},
            {"intersection_non_powers", w.intersection_non_powers}};
}

SystemWitness system_witness_from(const json& j) {
    SystemWitness w;
    w.witness = witness_from_json(j.at("witness"));
    w.coefficients_are_units = j.at("coefficients_are_units").get<bool>();
    w.union_members_distinct = j.at("union_members_distinct").get<bool>();
    w.intersection_non_powers = j.at("intersection_non_powers").get<bool>();
    return w;
}

struct BodyToJson {
    json operator()(const TheoremRule& t) const {
        return {{"kind", "theorem_rule"}, {"a", t.a}, {"b", t.b}, {"m", t.m}, {"n", t.n}};
    }
    json operator()(const RationalRoot& r) const {
        return {{"kind", "rational_root"}, {"which", r.which}, {"value", rat_json(r.value)},
                {"root", rat_json(r.root)}, {"n", r.n}, {"nonneg", r.nonneg}};
    }
    json operator()(const NonPowers& np) const {
        return {{"kind", "non_powers"}, {"values", rats_json(np.values)}, {"k", np.k}};
    }
    json operator()(const SquareObstruction& s) const {
        return {{"kind", "square_obstruction"}, {"ratios", rats_json(s.ratios)}};
    }
    json operator()(const WitnessCertificate& w) const { return {{"kind", "witness"}, {"witness", to_json(w.witness)}}; }
    json operator()(const PadicObstruction& o) const {
        return {{"kind", "padic_obstruction"}, {"p", o.p}, {"n", o.n}, {"valuation", o.valuation},
                {"via_unit_part", o.via_unit_part}, {"ratios", rats_json(o.ratios)}};
    }
    json operator()(const SignObstruction& s) const {
        return {{"kind", "sign_obstruction"}, {"a", s.a}, {"b", s.b}, {"c", s.c}};
    }
    json operator()(const SystemIntersection& s) const {
        return {{"kind", "system_intersection"}, {"intersection", rats_json(s.intersection)}, {"n", s.n},
                {"k", s.k}, {"member", opt_rat(s.member)}, {"root", opt_rat(s.root)}};
    }
    json operator()(const SystemWitnessCertificate& s) const {
        return {{"kind", "system_witness"}, {"system", to_json(s.system)}, {"witness", system_witness_json(s.witness)}};
    }
};

CertificateBody body_from(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "theorem_rule") {
        return TheoremRule{j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("m").get<unsigned>(),
                           j.at("n").get<unsigned>()};
    }
    if (kind == "rational_root") {
        return RationalRoot{j.at("which").get<std::string>(), rat_from(j.at("value")), rat_from(j.at("root")),
                            j.at("n").get<unsigned>(), j.at("nonneg").get<bool>()};
    }
    if (kind == "non_powers") return NonPowers{rats_from(j.at("values")), j.at("k").get<unsigned>()};
    if (kind == "square_obstruction") return SquareObstruction{triple_from(j.at("ratios"))};
    if (kind == "witness") return WitnessCertificate{witness_from_json(j.at("witness"))};
    if (kind == "padic_obstruction") {
        return PadicObstruction{j.at("p").get<std::uint64_t>(), j.at("n").get<unsigned>(), j.at("valuation").get<long>(),
                                j.at("via_unit_part").get<bool>(), triple_from(j.at("ratios"))};
    }
    if (kind == "sign_obstruction") {
        return SignObstruction{j.at("a").get<std::int64_t>(), j.at("b").get<std::int64_t>(), j.at("c").get<std::int64_t>()};
    }
    if (kind == "system_intersection") {
        return SystemIntersection{rats_from(j.at("intersection")), j.at("n").get<unsigned>(), j.at("k").get<unsigned>(),
                                  opt_rat_from(j.at("member")), opt_rat_from(j.at("root"))};
    }
    if (kind == "system_witness") {
        return SystemWitnessCertificate{system_from_json(j.at("system")), system_witness_from(j.at("witness"))};
    }
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
}

struct BodyText {
    std::string operator()(const TheoremRule& t) const {
        std::ostringstream os;
        os << "a+b = " << (t.a + t.b) << ", exponents (m, n) = (" << t.m << ", " << t.n << ")";
        return os.str();
    }
    std::string operator()(const RationalRoot& r) const {
        return r.which + " = " + r.value.str() + " = (" + r.root.str() + ")^" + std::to_string(r.n);
    }
    std::string operator()(const NonPowers& np) const {
        std::string s = "none of ";
        for (std::size_t i = 0; i < np.values.size(); ++i) s += (i ? ", " : "") + np.values[i].str();
        return s + " is " + power_phrase(np.k) + " in Q";
    }
    std::string operator()(const SquareObstruction& sq) const {
        return "non-squares " + sq.ratios[0].str() + ", " + sq.ratios[1].str() + ", " + sq.ratios[2].str() +
               " with non-square product " + (sq.ratios[0] * sq.ratios[1] * sq.ratios[2]).str();
    }
    std::string operator()(const WitnessCertificate& w) const {
        std::string s = "witness prime p=" + std::to_string(w.witness.p) + " > " + to_string(w.witness.lower_bound) +
                        "; mod p none of ";
        for (std::size_t i = 0; i < w.witness.targets.size(); ++i) s += (i ? ", " : "") + w.witness.targets[i].value.str();
        return s + " is " + power_phrase(w.witness.n);
    }
    std::string operator()(const PadicObstruction& o) const {
        std::string s = "p=" + std::to_string(o.p) + ", v_p((a+b)/c)=" + std::to_string(o.valuation);
        if (o.via_unit_part) s += " with non-power unit part";
        s += "; none of " + o.ratios[0].str() + ", " + o.ratios[1].str() + ", " + o.ratios[2].str() + " is " +
             power_phrase(o.n) + " in Q_" + std::to_string(o.p);
        return s;
    }
    std::string operator()(const SignObstruction& s) const {
        return "signs of (a, b, c) = (" + std::to_string(s.a) + ", " + std::to_string(s.b) + ", " + std::to_string(s.c) +
               ") admit no positive solution";
    }
    std::string operator()(const SystemIntersection& s) const {
        std::string out = "I = {";
        for (std::size_t i = 0; i < s.intersection.size(); ++i) out += (i ? ", " : "") + s.intersection[i].str();
        out += "}";
        if (s.member) return out + " contains " + s.member->str() + " = (" + s.root->str() + ")^" + std::to_string(s.n);
        return out + " has no member that is " + power_phrase(s.k);
    }
    std::string operator()(const SystemWitnessCertificate& s) const {
        return "system witness prime p=" + std::to_string(s.witness.witness.p);
    }
};

} // namespace

void RunConfig::validate() const {
    if (witness_bound < 2) throw std::invalid_argument("--bound must be at least 2");
    if (box_half_width <= 0) throw std::invalid_argument("--box must be positive");
    if (sieve_bound < 2) throw std::invalid_argument("sieve bound must be at least 2");
    if (threads == 0) throw std::invalid_argument("--threads must be positive");
    if (factor_budget.trial_limit == 0 || factor_budget.rho_iterations == 0) {
        throw std::invalid_argument("factor budget must be positive");
    }
}

ClassifyConfig RunConfig::classify_config() const { return {witness_bound, threads, factor_budget}; }

json to_json(const RunConfig& c) {
    return {{"witness_bound", c.witness_bound},
            {"box_half_width", c.box_half_width},
            {"factor_budget", {{"trial_limit", c.factor_budget.trial_limit}, {"rho_iterations", c.factor_budget.rho_iterations}}},
            {"sieve_bound", c.sieve_bound},
            {"output", c.output == OutputFormat::Json ? "json" : "text"},
            {"threads", c.threads},
            {"sieve_cache", c.sieve_cache ? json(*c.sieve_cache) : json(nullptr)}};
}

json to_json(const WitnessPrime& w) {
    json targets = json::array();
    for (const auto& t : w.targets) targets.push_back({{"value", rat_json(t.value)}, {"is_nth_power_mod_p", t.is_nth_power_mod_p}});
    return {{"p", w.p},
            {"n", w.n},
            {"targets", targets},
            {"lower_bound", to_string(w.lower_bound)},
            {"lower_bound_satisfied", w.lower_bound_satisfied}};
}

WitnessPrime witness_from_json(const json& j) {
    WitnessPrime w;
    w.p = j.at("p").get<std::uint64_t>();
    w.n = j.at("n").get<unsigned>();
    for (const auto& t : j.at("targets")) w.targets.push_back({rat_from(t.at("value")), t.at("is_nth_power_mod_p").get<bool>()});
    w.lower_bound = BigInt(j.at("lower_bound").get<std::string>(), 10);
    w.lower_bound_satisfied = j.at("lower_bound_satisfied").get<bool>();
    return w;
}

json to_json(const SystemSpec& s) {
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back({r.a, r.b, r.c});
    return {{"n", s.n}, {"rows", rows}};
}

SystemSpec system_from_json(const json& j) {
    std::vector<SystemRow> rows;
    for (const auto& r : j.at("rows")) {
        if (r.size() != 3) throw std::invalid_argument("system row needs three coefficients");
        rows.push_back({r[0].get<std::int64_t>(), r[1].get<std::int64_t>(), r[2].get<std::int64_t>()});
    }
    return SystemSpec::make(std::move(rows), j.at("n").get<unsigned>());
}

json to_json(const Certificate& c) {
    return {{"rule", c.rule},
            {"status", to_string(c.status)},
            {"domain", to_string(c.domain)},
            {"body", std::visit(BodyToJson{}, c.body)}};
}

Certificate certificate_from_json(const json& j) {
    return Certificate{j.at("rule").get<std::string>(), status_from_string(j.at("status").get<std::string>()),
                       domain_from_string(j.at("domain").get<std::string>()), body_from(j.at("body"))};
}

json to_json(const Verdict& v) {
    json certs = json::array();
    for (const auto& c : v.certificates()) certs.push_back(to_json(c));
    return {{"subject", v.subject()},
            {"status", {{"N", to_string(v.status(Domain::N))}, {"Z", to_string(v.status(Domain::Z))}, {"Q", to_string(v.status(Domain::Q))}}},
            {"reason", to_string(v.reason())},
            {"certificates", certs}};
}

Verdict verdict_from_json(const json& j) {
    try {
        std::vector<Certificate> certs;
        for (const auto& c : j.at("certificates")) certs.push_back(certificate_from_json(c));
        const auto& st = j.at("status");
        return Verdict::restore(j.at("subject").get<std::string>(),
                                {status_from_string(st.at("N").get<std::string>()),
                                 status_from_string(st.at("Z").get<std::string>()),
                                 status_from_string(st.at("Q").get<std::string>())},
                                std::move(certs), unknown_reason_from_string(j.at("reason").get<std::string>()));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed verdict: ") + e.what());
    } catch (const InternalInconsistency& e) {
        throw std::invalid_argument(std::string("malformed verdict: ") + e.what());
    }
}

json to_json(const HypothesisReport& h) {
    json checks = json::array();
    for (const auto& c : h.checks) checks.push_back({{"description", c.description}, {"ok", c.ok}});
    return {{"mode", to_string(h.mode)}, {"checks", checks}, {"satisfied", h.satisfied}};
}

json to_json(const MonoReport& r) {
    json found = json::array();
    for (const auto& s : r.found) found.push_back({{"w", s.w}, {"x", s.x}, {"y", s.y}, {"z", s.z}, {"color", s.color}});
    return {{"equation", r.equation},
            {"coloring", r.coloring},
            {"certifying", r.certifying},
            {"box", {{"lo", r.box.lo}, {"hi", r.box.hi}, {"exclude_zero", r.box.exclude_zero}}},
            {"found", found},
            {"rational_found", rats_json(r.rational_found)},
            {"candidates_scanned", r.candidates_scanned},
            {"monochromatic_count", r.monochromatic_count},
            {"elapsed_seconds", r.elapsed_seconds},
            {"finite_box_caveat", r.finite_box_caveat}};
}

json to_json(const ColumnsCertificate& c) {
    json witnesses = json::array();
    for (const auto& w : c.span_witnesses) {
        json combo = json::array();
        for (const auto& [col, coeff] : w.combination) combo.push_back({{"column", col + 1}, {"coefficient", rat_json(coeff)}});
        witnesses.push_back({{"block", w.block + 1}, {"combination", combo}});
    }
    json blocks = json::array();
    for (const auto& b : c.blocks) {
        json block = json::array();
        for (std::size_t col : b) block.push_back(col + 1);
        blocks.push_back(block);
    }
    return {{"blocks", blocks}, {"span_witnesses", witnesses}, {"indexing", "1-based"}};
}

json to_json(const DensitySurvey& s) {
    const Rat d = s.density();
    return {{"target", rat_json(s.target)},
            {"n", s.n},
            {"prime_bound", s.prime_bound},
            {"admissible_count", s.admissible_count},
            {"hit_count", s.hit_count},
            {"density", rat_json(d)},
            {"density_decimal", d.to_double()}};
}

json to_json(const JointSurvey& s) {
    return {{"targets", rats_json(s.targets)},
            {"n", s.n},
            {"prime_bound", s.prime_bound},
            {"admissible_count", s.admissible_count},
            {"hit_counts", s.hit_counts},
            {"pattern_counts", s.pattern_counts},
            {"at_least_one", s.at_least_one},
            {"all", s.all},
            {"none", s.none},
            {"none_density", rat_json(s.none_density())},
            {"inclusion_exclusion", s.inclusion_exclusion},
            {"inclusion_exclusion_holds", s.inclusion_exclusion_holds()}};
}

json make_report(const std::string& kind, const RunConfig& config, json result) {
    return {{"schema", kReportSchema}, {"kind", kind}, {"config", to_json(config)}, {"result", std::move(result)}};
}

std::string describe(const Certificate& c) {
    return "[" + c.rule + "] " + to_string(c.status) + " over " + to_string(c.domain) + ": " + std::visit(BodyText{}, c.body);
}

std::string render_text(const Verdict& v) {
    std::ostringstream os;
    os << v.subject() << '\n';
    for (Domain d : {Domain::N, Domain::Z, Domain::Q}) os << "  over " << to_string(d) << ": " << to_string(v.status(d)) << '\n';
    if (v.reason() != UnknownReason::None) os << "  open: " << to_string(v.reason()) << '\n';
    for (const auto& c : v.certificates()) os << "  " << describe(c) << '\n';
    return os.str();
}

} // namespace parreg
