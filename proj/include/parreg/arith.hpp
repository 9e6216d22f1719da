#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "parreg/rat.hpp"

namespace parreg {

class FactorizationBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduction mod p is undefined (p divides a numerator or denominator).
class BadReduction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DegenerateInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 5'000'000;
};

/// sign * prod p^e, with negative exponents coming from the denominator.
struct Factorization {
    int sign = 1;
    std::map<BigInt, long> exponents;

    Rat reconstruct() const;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Trial division up to budget.trial_limit, then Pollard-Brent rho on the
/// remaining composite cofactors. Throws FactorizationBudgetExceeded rather
/// than returning a partial answer.
Factorization factor(const Rat& q, const FactorBudget& budget = {});

long valuation(const Rat& q, const BigInt& p);
long valuation(const Rat& q, std::uint64_t p);

/// Rational n-th root of q when one exists. For even n the positive root is
/// returned; for odd n the root carries the sign of q.
std::optional<Rat> nth_power_in_Q(const Rat& q, unsigned long n);

/// As nth_power_in_Q, but the root must be >= 0.
std::optional<Rat> nth_power_in_Q_nonneg(const Rat& q, unsigned long n);

/// q = base^exponent with exponent maximal. Negative q only admits odd
/// exponents (element-level powers, not ideal-level).
struct PowerDecomposition {
    Rat base;
    unsigned long exponent = 1;
    friend bool operator==(const PowerDecomposition&, const PowerDecomposition&) = default;
};

/// Throws DegenerateInput for q in {0, 1, -1}.
PowerDecomposition max_power_decomposition(const Rat& q, const FactorBudget& budget = {});

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(std::uint64_t n);
bool is_probable_prime(const BigInt& n);

/// numerator * denominator^{-1} mod p. Throws BadReduction when p divides
/// either part.
std::uint64_t residue_mod_p(const Rat& q, std::uint64_t p);

/// Euler criterion: true iff q is an n-th power in F_p.
bool nth_power_mod_p(const Rat& q, std::uint64_t n, std::uint64_t p);

/// Residue form of nth_power_mod_p for a residue r in [1, p-1].
bool nth_power_residue(std::uint64_t r, std::uint64_t n, std::uint64_t p);

/// Legendre symbol (a/p) for an odd prime p.
int legendre(const BigInt& a, std::uint64_t p);

/// True iff q is an n-th power in Q_p.
///
/// Requires v_p(q) divisible by n and the unit part u to be an n-th power
/// in Z_p^x. With n = p^e * n' (p not dividing n'):
///   - u must be an n'-th power residue mod p;
///   - p odd:  u^(p-1) == 1 (mod p^(e+1));
///   - p = 2:  u == 1 (mod 2^(e+2)) when e >= 1 (odd powers are onto Z_2^x).
bool nth_power_in_Qp(const Rat& q, std::uint64_t p, std::uint64_t n);

/// Largest e with p^e | n.
unsigned p_adic_order(std::uint64_t n, std::uint64_t p);

} // namespace parreg
