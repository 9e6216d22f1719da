#include "parreg/rat.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace parreg {

namespace {

bool is_decimal_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!is_decimal_integer(s)) {
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    if (s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rat::Rat(long long value) {
    // mpz has no long long constructor on every platform.
    q_ = mpq_class(BigInt(std::to_string(value), 10));
}

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_integer(text));
    BigInt num = parse_integer(trim(text.substr(0, slash)));
    auto den_text = trim(text.substr(slash + 1));
    if (!den_text.empty() && den_text[0] == '-') {
        throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
    }
    BigInt den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rat(num, den);
}

Rat Rat::abs() const {
    Rat r;
    r.q_ = ::abs(q_);
    return r;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    Rat r;
    r.q_ = 1 / q_;
    r.q_.canonicalize();
    return r;
}

Rat Rat::pow(unsigned long exponent) const {
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), exponent);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), exponent);
    return Rat(n, d);
}

Rat Rat::pow_signed(long exponent) const {
    if (exponent >= 0) return pow(static_cast<unsigned long>(exponent));
    return inverse().pow(static_cast<unsigned long>(-exponent));
}

Rat Rat::operator-() const {
    Rat r;
    r.q_ = -q_;
    return r;
}

Rat& Rat::operator+=(const Rat& rhs) { q_ += rhs.q_; return *this; }
Rat& Rat::operator-=(const Rat& rhs) { q_ -= rhs.q_; return *this; }
Rat& Rat::operator*=(const Rat& rhs) { q_ *= rhs.q_; return *this; }

Rat& Rat::operator/=(const Rat& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= rhs.q_;
    return *this;
}

std::strong_ordering operator<=>(const Rat& lhs, const Rat& rhs) {
    int c = cmp(lhs.q_, rhs.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rat::str() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rat& value) { return os << value.str(); }

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string power_phrase(unsigned long k) {
    if (k == 1) return "a 1st power";
    if (k == 2) return "a square";
    if (k == 3) return "a cube";
    const char* suffix = "th";
    if (k % 100 < 11 || k % 100 > 13) {
        if (k % 10 == 1) suffix = "st";
        if (k % 10 == 2) suffix = "nd";
        if (k % 10 == 3) suffix = "rd";
    }
    const std::string digits = std::to_string(k);
    const bool vowel = digits[0] == '8' || digits == "11" || digits == "18";
    return std::string(vowel ? "an " : "a ") + digits + suffix + " power";
}

} // namespace parreg

std::size_t std::hash<parreg::Rat>::operator()(const parreg::Rat& value) const noexcept {
    return std::hash<std::string>{}(value.str());
}
