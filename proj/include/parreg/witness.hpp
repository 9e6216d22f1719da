#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parreg/equation.hpp"
#include "parreg/rat.hpp"

namespace parreg {

enum class HypothesisMode { OddN, EvenN, TwoVar, Squares };

std::string to_string(HypothesisMode mode);
HypothesisMode hypothesis_mode_from_string(const std::string& name);

struct HypothesisCheck {
    std::string description;
    bool ok = false;
    friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

/// Which prime-existence lemma applies to a target list, with every
/// sub-check recorded. `satisfied` means the lemma guarantees infinitely
/// many primes modulo which no target is an n-th power.
struct HypothesisReport {
    HypothesisMode mode = HypothesisMode::OddN;
    std::vector<HypothesisCheck> checks;
    bool satisfied = false;
    friend bool operator==(const HypothesisReport&, const HypothesisReport&) = default;
};

/// Three targets select ODD_N / EVEN_N / SQUARES, one or two select TWO_VAR.
/// Throws std::invalid_argument for an empty list, more than three targets,
/// or a zero target.
HypothesisReport check_hypotheses(std::span<const Rat> targets, unsigned n);

struct WitnessTarget {
    Rat value;
    bool is_nth_power_mod_p = false;
    friend bool operator==(const WitnessTarget&, const WitnessTarget&) = default;
};

struct WitnessPrime {
    std::uint64_t p = 0;
    unsigned n = 1;
    std::vector<WitnessTarget> targets;
    /// Exclusive lower bound the prime had to clear (max(|a|+|b|, |c|) for an
    /// equation, 0 when unconstrained).
    BigInt lower_bound = 0;
    bool lower_bound_satisfied = false;
    friend bool operator==(const WitnessPrime&, const WitnessPrime&) = default;
};

struct SearchOptions {
    std::uint64_t search_bound = 1'000'000;
    unsigned threads = 1;
};

/// Smallest prime p with min_exclusive < p <= search_bound, p dividing no
/// numerator or denominator of a target, and no target an n-th power mod p.
/// Absence within the bound is returned as nullopt.
std::optional<WitnessPrime> find_witness_prime(std::span<const Rat> targets, unsigned n, const BigInt& min_exclusive,
                                               const SearchOptions& options = {});

/// Recomputes every Euler criterion from scratch. With `require_non_powers`
/// every recorded flag must also be false (the obstruction case).
bool reverify(const WitnessPrime& witness, bool require_non_powers = true);

/// Prime certificate for a system: (i) no a_i, b_i, c_i, a_i+b_i vanishes
/// mod p; (ii) distinct members of the ratio union stay distinct mod p;
/// (iii) no member of the intersection is an n-th power mod p.
struct SystemWitness {
    WitnessPrime witness;
    bool coefficients_are_units = false;
    bool union_members_distinct = false;
    bool intersection_non_powers = false;
    friend bool operator==(const SystemWitness&, const SystemWitness&) = default;
};

std::optional<SystemWitness> find_system_witness(const SystemSpec& system, const SearchOptions& options = {});

/// Evaluates the three conditions at p directly (used by re-verification).
SystemWitness evaluate_system_prime(const SystemSpec& system, std::uint64_t p);

bool reverify(const SystemSpec& system, const SystemWitness& witness);

/// Parallel smallest-index search: returns the first index i in [0, count)
/// with pred(i) true, sharding indices over `threads` workers. The result
/// does not depend on the worker count.
template <typename Pred>
std::optional<std::size_t> parallel_first_index(std::size_t count, unsigned threads, Pred pred);

} // namespace parreg

#include "parreg/detail/parallel.hpp"
