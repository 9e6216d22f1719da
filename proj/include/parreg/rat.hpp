#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace parreg {

using BigInt = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Zero is stored as 0/1. All arithmetic is exact; there is no rounding
/// anywhere in the library.
class Rat {
public:
    Rat() = default;
    Rat(long value) : q_(value) {}
    Rat(int value) : q_(value) {}
    Rat(long long value);
    Rat(const BigInt& value) : q_(value) {}
    /// Throws std::domain_error when den == 0.
    Rat(const BigInt& num, const BigInt& den);

    /// Parses "p", "-p" or "p/q" (decimal, surrounding whitespace ignored).
    /// Throws std::invalid_argument on malformed input or zero denominator.
    static Rat parse(std::string_view text);

    BigInt num() const { return BigInt(q_.get_num()); }
    BigInt den() const { return BigInt(q_.get_den()); }
    const mpz_class& num_ref() const { return q_.get_num(); }
    const mpz_class& den_ref() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_one() const { return q_ == 1; }

    Rat abs() const;
    /// Throws std::domain_error on zero.
    Rat inverse() const;
    Rat pow(unsigned long exponent) const;
    /// Integer power, negative exponents allowed for nonzero values.
    Rat pow_signed(long exponent) const;

    Rat operator-() const;
    Rat& operator+=(const Rat& rhs);
    Rat& operator-=(const Rat& rhs);
    Rat& operator*=(const Rat& rhs);
    Rat& operator/=(const Rat& rhs);

    friend Rat operator+(Rat lhs, const Rat& rhs) { return lhs += rhs; }
    friend Rat operator-(Rat lhs, const Rat& rhs) { return lhs -= rhs; }
    friend Rat operator*(Rat lhs, const Rat& rhs) { return lhs *= rhs; }
    friend Rat operator/(Rat lhs, const Rat& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rat& lhs, const Rat& rhs) { return lhs.q_ == rhs.q_; }
    friend std::strong_ordering operator<=>(const Rat& lhs, const Rat& rhs);

    std::string str() const;
    double to_double() const { return q_.get_d(); }
    const mpq_class& raw() const { return q_; }

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& value);

std::string to_string(const BigInt& value);

/// "a square", "a cube", "an 8th power", ...
std::string power_phrase(unsigned long k);

} // namespace parreg

template <>
struct std::hash<parreg::Rat> {
    std::size_t operator()(const parreg::Rat& value) const noexcept;
};
