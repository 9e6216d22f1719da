#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parreg/equation.hpp"
#include "parreg/rat.hpp"

namespace parreg {

/// chi_p: x -> (x / p^{v_p(x)}) mod p, a color in [1, p-1].
struct ValuationColoring {
    std::uint64_t p = 2;
    friend bool operator==(const ValuationColoring&, const ValuationColoring&) = default;
};

/// palette[numerator mod modulus]. Non-certifying probe.
struct ModColoring {
    std::uint64_t modulus = 2;
    std::vector<unsigned> palette;
    friend bool operator==(const ModColoring&, const ModColoring&) = default;
};

/// Explicit colors for listed values, `fallback` elsewhere. Non-certifying probe.
struct TableColoring {
    std::map<Rat, unsigned> colors;
    unsigned fallback = 0;
    friend bool operator==(const TableColoring&, const TableColoring&) = default;
};

using ColoringSpec = std::variant<ValuationColoring, ModColoring, TableColoring>;

/// Only the valuation coloring can certify non-partition-regularity.
bool is_certifying(const ColoringSpec& spec);
std::string describe(const ColoringSpec& spec);

/// Throws std::invalid_argument for x = 0 or a malformed spec.
unsigned color_of(const Rat& x, const ColoringSpec& spec);
unsigned color_of(std::int64_t x, const ColoringSpec& spec);

/// Integers in [lo, hi], zero skipped when exclude_zero.
struct SearchBox {
    std::int64_t lo = 1;
    std::int64_t hi = 0;
    bool exclude_zero = true;

    std::uint64_t size() const;
    static SearchBox symmetric(std::int64_t half_width) { return {-half_width, half_width, true}; }
    friend bool operator==(const SearchBox&, const SearchBox&) = default;
};

struct MonoSolution {
    std::int64_t w = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;
    unsigned color = 0;
    friend auto operator<=>(const MonoSolution&, const MonoSolution&) = default;
};

struct MonoReport {
    std::string equation;
    std::string coloring;
    bool certifying = false;
    SearchBox box;
    /// One tuple per row, all sharing a single color.
    std::vector<MonoSolution> found;
    /// (w, x, y, z) of the first hit in rational mode.
    std::vector<Rat> rational_found;
    std::uint64_t candidates_scanned = 0;
    std::uint64_t monochromatic_count = 0;
    double elapsed_seconds = 0.0;
    /// Absence over a finite box is evidence, not a proof.
    bool finite_box_caveat = true;

    bool none_found() const { return found.empty() && rational_found.empty(); }
};

/// Associative merge of two shards of the same search.
void merge_into(MonoReport& into, const MonoReport& shard);

/// Enumerates (w, z, x) over the box and solves for y exactly.
MonoReport verify_no_mono_solution(const EquationSpec& eq, const ColoringSpec& spec, const SearchBox& box,
                                   unsigned threads = 1);

/// All rows must be solved inside one color class.
MonoReport verify_system_no_mono(const SystemSpec& system, const ColoringSpec& spec, const SearchBox& box,
                                 unsigned threads = 1);

/// Fractions r/s with 1 <= s <= height, 1 <= |r| <= height, in lowest terms.
std::vector<Rat> small_height_rationals(std::uint64_t height);

/// Spot check over small_height_rationals(height).
MonoReport verify_rational_no_mono(const EquationSpec& eq, const ColoringSpec& spec, std::uint64_t height);

/// Closed-form number of (w, z, x) triples for one row.
std::uint64_t predicted_candidates(const SearchBox& box);

} // namespace parreg
