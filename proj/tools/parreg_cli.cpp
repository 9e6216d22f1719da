#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parreg/arith.hpp"
#include "parreg/classify.hpp"
#include "parreg/coloring.hpp"
#include "parreg/density.hpp"
#include "parreg/radolinear.hpp"
#include "parreg/report.hpp"
#include "parreg/reproduce.hpp"
#include "parreg/sieve.hpp"
#include "parreg/witness.hpp"

#ifndef PARREG_FIXTURE_DIR
#define PARREG_FIXTURE_DIR "tests/fixtures"
#endif

namespace {

using namespace parreg;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void emit(const RunConfig& config, const std::string& kind, const json& result, const std::string& text) {
    if (config.output == OutputFormat::Json) {
        std::cout << make_report(kind, config, result).dump(2) << '\n';
    } else {
        std::cout << text;
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return in;
}

std::vector<Rat> parse_rats(const std::vector<std::string>& tokens) {
    std::vector<Rat> out;
    for (const auto& t : tokens) out.push_back(Rat::parse(t));
    return out;
}

int exit_for(const Verdict& v) { return v.reason() == UnknownReason::BudgetExceeded ? kExitBudget : kExitOk; }

int cmd_classify(const RunConfig& config, const std::vector<std::int64_t>& args) {
    if (args.size() != 5) throw UsageError("classify expects a b c m n");
    if (args[3] <= 0 || args[4] <= 0) throw UsageError("exponents must be positive");
    auto eq = EquationSpec::make(args[0], args[1], args[2], static_cast<unsigned>(args[3]), static_cast<unsigned>(args[4]));
    Verdict v = classify_equation(eq, config.classify_config());
    emit(config, "classify", to_json(v), render_text(v));
    return exit_for(v);
}

int cmd_system(const RunConfig& config, const std::string& path, unsigned n) {
    if (n == 0) throw UsageError("n must be positive");
    auto in = open_input(path);
    SystemSpec sys = SystemSpec::parse(in, n);
    Verdict v = classify_system(sys, config.classify_config());
    json result = to_json(v);
    json inter = json::array();
    std::string text = render_text(v) + "  I = {";
    const auto members = sys.ratio_intersection();
    for (std::size_t i = 0; i < members.size(); ++i) {
        inter.push_back(members[i].str());
        text += (i ? ", " : "") + members[i].str();
    }
    text += "}\n";
    result["intersection"] = inter;
    emit(config, "system", result, text);
    return exit_for(v);
}

int cmd_witness(const RunConfig& config, unsigned n, const std::vector<std::string>& tokens, const std::string& min) {
    if (n == 0) throw UsageError("n must be positive");
    auto targets = parse_rats(tokens);
    if (targets.empty() || targets.size() > 3) throw UsageError("witness expects one to three targets");
    for (const auto& t : targets) {
        if (t.is_zero()) throw UsageError("targets must be nonzero");
    }
    const BigInt lower(min, 10);
    HypothesisReport hyp = check_hypotheses(targets, n);
    auto w = find_witness_prime(targets, n, lower, {config.witness_bound, config.threads});

    json result = {{"hypotheses", to_json(hyp)}, {"witness", w ? to_json(*w) : json(nullptr)}};
    std::string text = "hypotheses " + to_string(hyp.mode) + (hyp.satisfied ? " satisfied\n" : " not satisfied\n");
    for (const auto& c : hyp.checks) text += std::string("  [") + (c.ok ? "x" : " ") + "] " + c.description + "\n";
    if (w) {
        text += "witness prime p=" + std::to_string(w->p) + "\n";
    } else {
        result["status"] = hyp.satisfied ? "NEEDS_LARGER_BOUND" : "HYPOTHESES_UNMET";
        text += std::string("no witness prime <= ") + std::to_string(config.witness_bound) +
                (hyp.satisfied ? " (NEEDS_LARGER_BOUND)\n" : " (HYPOTHESES_UNMET)\n");
    }
    emit(config, "witness", result, text);
    return kExitOk;
}

int cmd_verify(const RunConfig& config, const std::vector<std::int64_t>& args, std::uint64_t prime, std::uint64_t modulus,
               std::int64_t lo, std::optional<std::int64_t> hi, std::uint64_t rational_height) {
    if (args.size() != 5) throw UsageError("verify expects a b c m n");
    if (args[3] <= 0 || args[4] <= 0) throw UsageError("exponents must be positive");
    auto eq = EquationSpec::make(args[0], args[1], args[2], static_cast<unsigned>(args[3]), static_cast<unsigned>(args[4]));
    ColoringSpec spec;
    if (prime != 0 && modulus != 0) throw UsageError("choose one of --prime and --mod");
    if (prime != 0) {
        if (!is_prime(prime)) throw UsageError("--prime must be prime");
        spec = ValuationColoring{prime};
    } else if (modulus != 0) {
        ModColoring m{modulus, {}};
        for (std::uint64_t r = 0; r < modulus; ++r) m.palette.push_back(static_cast<unsigned>(r));
        spec = m;
    } else {
        throw UsageError("verify needs --prime P or --mod M");
    }

    MonoReport report;
    if (rational_height > 0) {
        report = verify_rational_no_mono(eq, spec, rational_height);
    } else {
        SearchBox box = hi ? SearchBox{lo, *hi, true} : SearchBox::symmetric(config.box_half_width);
        report = verify_no_mono_solution(eq, spec, box, config.threads);
    }
    std::string text = report.equation + " under " + report.coloring + "\n  box [" + std::to_string(report.box.lo) +
                       ", " + std::to_string(report.box.hi) + "], scanned " + std::to_string(report.candidates_scanned) +
                       " (w,z,x) triples\n";
    if (report.none_found()) {
        text += "  no monochromatic solution in the box (finite-box evidence only)\n";
    } else if (!report.found.empty()) {
        const auto& s = report.found.front();
        text += "  monochromatic solution w=" + std::to_string(s.w) + " x=" + std::to_string(s.x) +
                " y=" + std::to_string(s.y) + " z=" + std::to_string(s.z) + " color " + std::to_string(s.color) +
                " (" + std::to_string(report.monochromatic_count) + " total)\n";
    } else {
        const auto& r = report.rational_found;
        text += "  monochromatic solution w=" + r[0].str() + " x=" + r[1].str() + " y=" + r[2].str() +
                " z=" + r[3].str() + " (" + std::to_string(report.monochromatic_count) + " total)\n";
    }
    emit(config, "verify", to_json(report), text);
    return kExitOk;
}

int cmd_columns(const RunConfig& config, const std::string& path) {
    auto in = open_input(path);
    QMatrix m = QMatrix::parse(in);
    auto cert = columns_condition(m);
    json result = {{"rows", m.rows()}, {"cols", m.cols()}, {"certificate", cert ? to_json(*cert) : json(nullptr)}};
    std::string text;
    if (cert) {
        result["verified"] = verify_certificate(m, *cert);
        text = "columns condition holds; ordered partition:";
        for (const auto& b : cert->blocks) {
            text += " {";
            for (std::size_t i = 0; i < b.size(); ++i) text += (i ? "," : "") + std::to_string(b[i] + 1);
            text += "}";
        }
        text += "\n";
    } else {
        text = "columns condition fails\n";
    }
    emit(config, "columns", result, text);
    return kExitOk;
}

int cmd_density(const RunConfig& config, unsigned n, const std::vector<std::string>& tokens, std::uint64_t bound,
                const std::string& csv) {
    if (n == 0) throw UsageError("n must be positive");
    auto targets = parse_rats(tokens);
    if (targets.empty()) throw UsageError("density expects at least one target");
    for (const auto& t : targets) {
        if (t.is_zero()) throw UsageError("targets must be nonzero");
    }
    if (!csv.empty()) {
        std::ofstream out(csv);
        if (!out) throw UsageError("cannot write '" + csv + "'");
        write_csv(out, targets, n, bound, config.threads);
    }
    if (targets.size() == 1) {
        auto s = survey(targets[0], n, bound, config.threads);
        std::string text = targets[0].str() + " is " + power_phrase(n) + " mod " +
                           std::to_string(s.hit_count) + " of " + std::to_string(s.admissible_count) +
                           " admissible primes <= " + std::to_string(bound) + ", density " + s.density().str() + " ~ " +
                           std::to_string(s.density().to_double()) + "\n";
        emit(config, "density", to_json(s), text);
        return kExitOk;
    }
    auto js = joint_survey(targets, n, bound, config.threads);
    std::string text = "admissible " + std::to_string(js.admissible_count) + ", at least one " +
                       std::to_string(js.at_least_one) + ", all " + std::to_string(js.all) + ", none " +
                       std::to_string(js.none) + " (density " + std::to_string(js.none_density().to_double()) +
                       "), inclusion-exclusion " + (js.inclusion_exclusion_holds() ? "exact" : "MISMATCH") + "\n";
    emit(config, "joint-density", to_json(js), text);
    return kExitOk;
}

int cmd_reproduce(const RunConfig& config, const std::string& fixture_path) {
    auto in = open_input(fixture_path);
    json fixture;
    try {
        fixture = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad fixture: ") + e.what());
    }
    auto outcomes = run_regression(fixture, config);
    bool all = true;
    json rows = json::array();
    std::string text;
    for (const auto& o : outcomes) {
        all = all && o.pass;
        rows.push_back({{"id", o.id}, {"pass", o.pass}, {"expected", o.expected}, {"actual", o.actual}});
        text += std::string(o.pass ? "PASS " : "FAIL ") + o.id + "\n";
        if (!o.pass) text += "  expected " + o.expected.dump() + "\n  actual   " + o.actual.dump() + "\n";
    }
    emit(config, "reproduce", {{"rows", rows}, {"all_pass", all}}, text);
    return all ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parreg: partition regularity of ax+by = c w^m z^n"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    bool as_json = false;
    std::string sieve_cache;
    app.add_option("--bound", config.witness_bound, "witness prime search bound");
    app.add_option("--box", config.box_half_width, "half width of the search box");
    app.add_flag("--json", as_json, "emit a parreg-report/1 JSON document");
    app.add_option("--threads", config.threads, "worker threads");
    app.add_option("--sieve-cache", sieve_cache, "prime sieve cache file");
    app.add_option("--trial-limit", config.factor_budget.trial_limit, "trial division limit");
    app.add_option("--rho-iterations", config.factor_budget.rho_iterations, "Pollard rho iteration budget");

    std::vector<std::int64_t> eq_args;
    auto* classify = app.add_subcommand("classify", "classify a x + b y = c w^m z^n");
    classify->add_option("coefficients", eq_args, "a b c m n")->required()->expected(5)->allow_extra_args(false);

    std::string rows_file;
    unsigned system_n = 0;
    auto* system = app.add_subcommand("system", "classify a system of rows 'a b c' sharing exponent n");
    system->add_option("rows", rows_file, "rows file")->required();
    system->add_option("n", system_n, "exponent")->required();

    unsigned witness_n = 0;
    std::vector<std::string> witness_targets;
    std::string witness_min = "0";
    auto* witness = app.add_subcommand("witness", "search a prime where no target is an n-th power");
    witness->add_option("n", witness_n, "exponent")->required();
    witness->add_option("targets", witness_targets, "rational targets")->required();
    witness->add_option("--min", witness_min, "exclusive lower bound on the prime");

    std::vector<std::int64_t> verify_args;
    std::uint64_t verify_prime = 0, verify_mod = 0, verify_height = 0;
    std::int64_t verify_lo = 1;
    std::optional<std::int64_t> verify_hi;
    auto* verify = app.add_subcommand("verify", "search monochromatic solutions under a coloring");
    verify->add_option("coefficients", verify_args, "a b c m n")->required()->expected(5);
    verify->add_option("--prime", verify_prime, "valuation coloring modulo this prime");
    verify->add_option("--mod", verify_mod, "residue coloring (non-certifying)");
    verify->add_option("--lo", verify_lo, "box lower end (with --hi)");
    verify->add_option("--hi", verify_hi, "box upper end; default is [-box, box]");
    verify->add_option("--rational-height", verify_height, "enumerate fractions of this height instead");

    std::string matrix_file;
    auto* columns = app.add_subcommand("columns", "test the columns condition of a rational matrix");
    columns->add_option("matrix", matrix_file, "matrix file")->required();

    unsigned density_n = 0;
    std::vector<std::string> density_targets;
    std::uint64_t density_bound = config.sieve_bound;
    std::string density_csv;
    auto* density = app.add_subcommand("density", "n-th power residue counts over primes");
    density->add_option("n", density_n, "exponent")->required();
    density->add_option("targets", density_targets, "rational targets")->required();
    density->add_option("--primes", density_bound, "prime bound (default 100000)");
    density->add_option("--csv", density_csv, "write per-prime rows to this file");

    std::string fixture = std::string(PARREG_FIXTURE_DIR) + "/regression.json";
    auto* reproduce = app.add_subcommand("reproduce", "run the regression table against the fixture");
    reproduce->add_option("--fixture", fixture, "expected-output fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        config.output = as_json ? OutputFormat::Json : OutputFormat::Text;
        if (!sieve_cache.empty()) config.sieve_cache = sieve_cache;
        config.validate();
        if (auto path = SieveCache::resolve_path(config.sieve_cache)) SieveCache::global().set_cache_file(*path);

        if (*classify) return cmd_classify(config, eq_args);
        if (*system) return cmd_system(config, rows_file, system_n);
        if (*witness) return cmd_witness(config, witness_n, witness_targets, witness_min);
        if (*verify) return cmd_verify(config, verify_args, verify_prime, verify_mod, verify_lo, verify_hi, verify_height);
        if (*columns) return cmd_columns(config, matrix_file);
        if (*density) return cmd_density(config, density_n, density_targets, density_bound, density_csv);
        if (*reproduce) return cmd_reproduce(config, fixture);
    } catch (const FactorizationBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const DimensionLimitExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
