#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "parreg/rat.hpp"

namespace parreg {

class DimensionLimitExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Throws std::invalid_argument on ragged input.
    static QMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
    /// One row per line, whitespace-separated "p" or "p/q"; '#' comments.
    static QMatrix parse(std::istream& in);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::vector<Rat> column(std::size_t c) const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Coefficients expressing s_block as a combination of earlier columns.
struct SpanWitness {
    std::size_t block = 0;
    std::vector<std::pair<std::size_t, Rat>> combination;
    friend bool operator==(const SpanWitness&, const SpanWitness&) = default;
};

/// Column indices are 0-based.
struct ColumnsCertificate {
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<SpanWitness> span_witnesses;
    friend bool operator==(const ColumnsCertificate&, const ColumnsCertificate&) = default;
};

inline constexpr std::size_t kDefaultColumnCap = 16;

/// Exhaustive search; blocks are tried by size, then lexicographically.
/// Throws DimensionLimitExceeded above max_cols.
std::optional<ColumnsCertificate> columns_condition(const QMatrix& m, std::size_t max_cols = kDefaultColumnCap);

/// Builds span witnesses for a given ordered partition, or nullopt when it
/// does not satisfy the columns condition.
std::optional<ColumnsCertificate> certify_partition(const QMatrix& m, const std::vector<std::vector<std::size_t>>& blocks);

/// Direct exact re-check of a certificate.
bool verify_certificate(const QMatrix& m, const ColumnsCertificate& cert);

/// Coefficients c with sum c_j * vectors[j] = target, or nullopt.
std::optional<std::vector<Rat>> solve_in_span(const std::vector<std::vector<Rat>>& vectors, const std::vector<Rat>& target);

/// Lexicographically smallest nonempty index set (0-based) with zero sum.
std::optional<std::vector<std::size_t>> single_equation_pr(std::span<const std::int64_t> coeffs);

/// Constant t with sum(coeffs) * t = rhs.
std::optional<BigInt> inhomogeneous_constant_solution(std::span<const std::int64_t> coeffs, std::int64_t rhs);

/// (ell + 2) x (ell + 5) matrix for the Brauer-type system with shifts j.
QMatrix brauer_system(std::int64_t h, std::span<const std::int64_t> j);
/// The known ordered partition of its columns (0-based).
std::vector<std::vector<std::size_t>> brauer_partition(std::size_t ell);

} // namespace parreg
