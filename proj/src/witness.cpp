#include "parreg/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include "parreg/arith.hpp"
#include "parreg/sieve.hpp"

namespace parreg {

namespace {

bool is_power(const Rat& q, unsigned long k) { return nth_power_in_Q(q, k).has_value(); }

std::string label(const Rat& q) { return q.str(); }

std::uint64_t clamp_to_u64(const BigInt& v) {
    if (v < 0) return 0;
    if (!mpz_fits_ulong_p(v.get_mpz_t())) return std::numeric_limits<std::uint64_t>::max();
    return v.get_ui();
}

// Reduced target: numerator and denominator kept as GMP integers so that
// reduction mod each candidate prime is a single division.
struct ReducedTargets {
    explicit ReducedTargets(std::span<const Rat> targets) {
        for (const auto& t : targets) {
            nums.push_back(t.num());
            dens.push_back(t.den());
        }
    }

    // Residues of all targets mod p, or nullopt if some target is not a unit.
    std::optional<std::vector<std::uint64_t>> residues(std::uint64_t p) const {
        std::vector<std::uint64_t> out;
        out.reserve(nums.size());
        for (std::size_t i = 0; i < nums.size(); ++i) {
            std::uint64_t n = mpz_fdiv_ui(nums[i].get_mpz_t(), p);
            std::uint64_t d = mpz_fdiv_ui(dens[i].get_mpz_t(), p);
            if (n == 0 || d == 0) return std::nullopt;
            out.push_back(d == 1 ? n : mul_mod(n, pow_mod(d, p - 2, p), p));
        }
        return out;
    }

    std::vector<BigInt> nums;
    std::vector<BigInt> dens;
};

// a_i, b_i, c_i and a_i + b_i for every row.
std::vector<BigInt> row_coefficients(const SystemSpec& system) {
    std::vector<BigInt> out;
    for (const auto& r : system.rows) {
        const BigInt a(std::to_string(r.a), 10), b(std::to_string(r.b), 10), c(std::to_string(r.c), 10);
        out.insert(out.end(), {a, b, c, BigInt(a + b)});
    }
    return out;
}

} // namespace

std::string to_string(HypothesisMode mode) {
    switch (mode) {
    case HypothesisMode::OddN: return "ODD_N";
    case HypothesisMode::EvenN: return "EVEN_N";
    case HypothesisMode::TwoVar: return "TWO_VAR";
    case HypothesisMode::Squares: return "SQUARES";
    }
    return "?";
}

HypothesisMode hypothesis_mode_from_string(const std::string& name) {
    for (auto m : {HypothesisMode::OddN, HypothesisMode::EvenN, HypothesisMode::TwoVar, HypothesisMode::Squares}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown hypothesis mode '" + name + "'");
}

HypothesisReport check_hypotheses(std::span<const Rat> targets, unsigned n) {
    if (n == 0) throw std::invalid_argument("check_hypotheses: n must be positive");
    if (targets.empty() || targets.size() > 3) {
        throw std::invalid_argument("check_hypotheses: expected one to three targets");
    }
    for (const auto& t : targets) {
        if (t.is_zero()) throw std::invalid_argument("check_hypotheses: targets must be nonzero");
    }

    HypothesisReport report;
    auto all_ok = [](const std::vector<HypothesisCheck>& cs) {
        return std::all_of(cs.begin(), cs.end(), [](const auto& c) { return c.ok; });
    };
    auto non_power_checks = [&](unsigned long k) {
        std::vector<HypothesisCheck> cs;
        for (const auto& t : targets) {
            cs.push_back({label(t) + " is not " + power_phrase(k) + " in Q", !is_power(t, k)});
        }
        return cs;
    };

    if (targets.size() < 3) {
        report.mode = HypothesisMode::TwoVar;
        report.checks = non_power_checks(n % 4 == 0 ? n / 2 : n);
        report.satisfied = all_ok(report.checks);
        return report;
    }

    if (n % 2 == 1) {
        report.mode = HypothesisMode::OddN;
        report.checks = non_power_checks(n);
        report.satisfied = all_ok(report.checks);
        return report;
    }

    std::vector<HypothesisCheck> even;
    bool even_ok = false;
    if (n > 2) {
        even = non_power_checks(n / 2);
        if (n % 4 == 0) {
            bool some = std::any_of(targets.begin(), targets.end(), [&](const Rat& t) { return !is_power(t, n / 4); });
            even.push_back({"some target is not " + power_phrase(n / 4) + " in Q", some});
        }
        even_ok = all_ok(even);
    }

    std::vector<HypothesisCheck> squares = non_power_checks(2);
    Rat product = targets[0] * targets[1] * targets[2];
    squares.push_back({"product " + label(product) + " is not a square in Q", !is_power(product, 2)});
    bool squares_ok = all_ok(squares);

    report.checks = even;
    report.checks.insert(report.checks.end(), squares.begin(), squares.end());
    if (even_ok) {
        report.mode = HypothesisMode::EvenN;
        report.satisfied = true;
    } else if (squares_ok) {
        report.mode = HypothesisMode::Squares;
        report.satisfied = true;
    } else {
        report.mode = n == 2 ? HypothesisMode::Squares : HypothesisMode::EvenN;
        report.satisfied = false;
    }
    return report;
}

std::optional<WitnessPrime> find_witness_prime(std::span<const Rat> targets, unsigned n, const BigInt& min_exclusive,
                                               const SearchOptions& options) {
    if (n == 0) throw std::invalid_argument("find_witness_prime: n must be positive");
    for (const auto& t : targets) {
        if (t.is_zero()) throw std::invalid_argument("find_witness_prime: targets must be nonzero");
    }
    const std::uint64_t lo = clamp_to_u64(min_exclusive);
    if (options.search_bound < 2 || lo >= options.search_bound) return std::nullopt;

    auto sieve = SieveCache::global().get(options.search_bound);
    auto candidates = sieve->primes_in(lo, options.search_bound);
    ReducedTargets reduced(targets);

    auto qualifies = [&](std::size_t i) {
        const std::uint64_t p = candidates[i];
        auto res = reduced.residues(p);
        if (!res) return false;
        for (std::uint64_t r : *res) {
            if (nth_power_residue(r, n, p)) return false;
        }
        return true;
    };
    auto hit = parallel_first_index(candidates.size(), options.threads, qualifies);
    if (!hit) return std::nullopt;

    WitnessPrime w;
    w.p = candidates[*hit];
    w.n = n;
    w.lower_bound = min_exclusive;
    w.lower_bound_satisfied = BigInt(std::to_string(w.p), 10) > min_exclusive;
    for (const auto& t : targets) w.targets.push_back({t, nth_power_mod_p(t, n, w.p)});
    return w;
}

bool reverify(const WitnessPrime& witness, bool require_non_powers) {
    if (!is_prime(witness.p) || witness.n == 0) return false;
    if ((BigInt(std::to_string(witness.p), 10) > witness.lower_bound) != witness.lower_bound_satisfied) return false;
    for (const auto& t : witness.targets) {
        bool actual = false;
        try {
            actual = nth_power_mod_p(t.value, witness.n, witness.p);
        } catch (const BadReduction&) {
            return false;
        }
        if (actual != t.is_nth_power_mod_p) return false;
        if (require_non_powers && actual) return false;
    }
    return true;
}

SystemWitness evaluate_system_prime(const SystemSpec& system, std::uint64_t p) {
    SystemWitness sw;
    sw.witness.p = p;
    sw.witness.n = system.n;

    sw.coefficients_are_units = true;
    for (const auto& v : row_coefficients(system)) {
        if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0) sw.coefficients_are_units = false;
    }

    sw.union_members_distinct = false;
    sw.intersection_non_powers = false;
    if (!sw.coefficients_are_units) return sw;

    auto members = system.ratio_union();
    ReducedTargets reduced(members);
    auto res = reduced.residues(p);
    if (res) {
        std::sort(res->begin(), res->end());
        sw.union_members_distinct = std::adjacent_find(res->begin(), res->end()) == res->end();
    }

    auto inter = system.ratio_intersection();
    sw.intersection_non_powers = true;
    for (const auto& v : inter) {
        bool power = nth_power_mod_p(v, system.n, p);
        sw.witness.targets.push_back({v, power});
        if (power) sw.intersection_non_powers = false;
    }
    sw.witness.lower_bound_satisfied = true;
    return sw;
}

std::optional<SystemWitness> find_system_witness(const SystemSpec& system, const SearchOptions& options) {
    if (system.rows.empty()) throw std::invalid_argument("find_system_witness: empty system");
    if (options.search_bound < 2) return std::nullopt;

    auto sieve = SieveCache::global().get(options.search_bound);
    auto candidates = sieve->primes_in(0, options.search_bound);

    auto members = system.ratio_union();
    auto inter = system.ratio_intersection();
    ReducedTargets reduced_members(members);
    ReducedTargets reduced_inter(inter);
    const auto coefficients = row_coefficients(system);

    auto qualifies = [&](std::size_t i) {
        const std::uint64_t p = candidates[i];
        for (const auto& v : coefficients) {
            if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0) return false;
        }
        auto res = reduced_members.residues(p);
        if (!res) return false;
        std::sort(res->begin(), res->end());
        if (std::adjacent_find(res->begin(), res->end()) != res->end()) return false;
        auto ires = reduced_inter.residues(p);
        if (!ires) return false;
        for (std::uint64_t r : *ires) {
            if (nth_power_residue(r, system.n, p)) return false;
        }
        return true;
    };
    auto hit = parallel_first_index(candidates.size(), options.threads, qualifies);
    if (!hit) return std::nullopt;
    return evaluate_system_prime(system, candidates[*hit]);
}

bool reverify(const SystemSpec& system, const SystemWitness& witness) {
    if (!is_prime(witness.witness.p)) return false;
    SystemWitness fresh = evaluate_system_prime(system, witness.witness.p);
    return fresh == witness && fresh.coefficients_are_units && fresh.union_members_distinct &&
           fresh.intersection_non_powers;
}

} // namespace parreg
