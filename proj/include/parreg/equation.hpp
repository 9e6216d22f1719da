#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "parreg/rat.hpp"

namespace parreg {

/// a*x + b*y = c * w^m * z^n, with a, b, c nonzero and 1 <= m <= n after
/// canonicalization (w and z play symmetric roles).
struct EquationSpec {
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t c = 1;
    unsigned m = 1;
    unsigned n = 1;

    /// Throws std::invalid_argument on zero coefficients, zero exponents or
    /// coefficients too large for exact 64-bit box arithmetic (|.| >= 2^62).
    static EquationSpec make(std::int64_t a, std::int64_t b, std::int64_t c, unsigned m, unsigned n);

    /// a/c, b/c, (a+b)/c.
    std::array<Rat, 3> ratios() const;
    std::string str() const;

    friend bool operator==(const EquationSpec&, const EquationSpec&) = default;
};

inline constexpr std::array<const char*, 3> kRatioNames = {"a/c", "b/c", "(a+b)/c"};

struct SystemRow {
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::int64_t c = 1;
    std::array<Rat, 3> ratios() const;
    friend bool operator==(const SystemRow&, const SystemRow&) = default;
};

/// Rows a_i x_i + b_i y_i = c_i w_i z_i^n sharing the exponent n.
struct SystemSpec {
    std::vector<SystemRow> rows;
    unsigned n = 1;

    static SystemSpec make(std::vector<SystemRow> rows, unsigned n);

    /// Parses "a b c" per line; '#' starts a comment, blank lines ignored.
    /// Throws std::invalid_argument on malformed lines or an empty system.
    static SystemSpec parse(std::istream& in, unsigned n);

    /// Distinct members of the union of the row ratio sets, ascending.
    std::vector<Rat> ratio_union() const;
    /// Intersection over rows of {a_i/c_i, b_i/c_i, (a_i+b_i)/c_i}, ascending.
    std::vector<Rat> ratio_intersection() const;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

} // namespace parreg
