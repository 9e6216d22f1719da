#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "parreg/rat.hpp"

namespace parreg {

struct DensitySurvey {
    Rat target;
    unsigned n = 1;
    std::uint64_t prime_bound = 0;
    /// Primes <= bound dividing neither numerator nor denominator.
    std::uint64_t admissible_count = 0;
    std::uint64_t hit_count = 0;

    /// hit / admissible, 0 when nothing is admissible.
    Rat density() const;
};

DensitySurvey survey(const Rat& target, unsigned n, std::uint64_t prime_bound, unsigned threads = 1);

/// One admissible prime with a hit flag per target.
struct PrimeRecord {
    std::uint64_t p = 0;
    std::vector<bool> hits;
};

/// Primes <= bound at which every target reduces, ascending.
std::vector<PrimeRecord> prime_records(std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound,
                                       unsigned threads = 1);

struct JointSurvey {
    std::vector<Rat> targets;
    unsigned n = 1;
    std::uint64_t prime_bound = 0;
    std::uint64_t admissible_count = 0;
    std::vector<std::uint64_t> hit_counts;
    /// Index = bitmask of targets that are n-th powers at the prime.
    std::vector<std::uint64_t> pattern_counts;
    /// Index = bitmask S: primes where every target in S is a hit.
    std::vector<std::uint64_t> subset_counts;
    std::uint64_t at_least_one = 0;
    std::uint64_t all = 0;
    std::uint64_t none = 0;
    /// Signed alternating sum of subset_counts over nonempty S.
    std::int64_t inclusion_exclusion = 0;

    bool inclusion_exclusion_holds() const { return inclusion_exclusion == static_cast<std::int64_t>(at_least_one); }
    Rat none_density() const;
};

/// Throws std::invalid_argument for zero targets, an empty list, or more
/// than 16 targets.
JointSurvey joint_survey(std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound, unsigned threads = 1);

/// Columns: prime, p mod n, gcd(n, p-1), then one 0/1 column per target.
void write_csv(std::ostream& os, std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound,
               unsigned threads = 1);

} // namespace parreg
