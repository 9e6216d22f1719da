#include "parreg/arith.hpp"

#include <numeric>
#include <string>

namespace parreg {

namespace {

void add_exponent(std::map<BigInt, long>& exps, const BigInt& p, long e) {
    auto& slot = exps[p];
    slot += e;
    if (slot == 0) exps.erase(p);
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n, consuming iterations from `remaining`.
BigInt rho_split(const BigInt& n, std::uint64_t& remaining) {
    for (unsigned long c = 1;; ++c) {
        BigInt y = 2, x, q = 1, g = 1, ys, tmp;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = (y * y + c) % n;
            }
            std::uint64_t k = 0;
            do {
                ys = y;
                std::uint64_t steps = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    tmp = abs(x - y);
                    q = (q * tmp) % n;
                }
                if (remaining < steps) {
                    throw FactorizationBudgetExceeded("Pollard rho budget exhausted on " + n.get_str());
                }
                remaining -= steps;
                g = gcd(q, n);
                k += steps;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);

        if (g == n) {
            // Batched gcd overshot; step one at a time from the saved point.
            do {
                ys = (ys * ys + c) % n;
                tmp = abs(x - ys);
                g = gcd(tmp, n);
                if (remaining == 0) {
                    throw FactorizationBudgetExceeded("Pollard rho budget exhausted on " + n.get_str());
                }
                --remaining;
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_composite(const BigInt& n, std::uint64_t& remaining, std::map<BigInt, long>& exps) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        add_exponent(exps, n, 1);
        return;
    }
    BigInt d = rho_split(n, remaining);
    factor_composite(d, remaining, exps);
    factor_composite(BigInt(n / d), remaining, exps);
}

void factor_positive(BigInt n, long sign_of_exponent, const FactorBudget& budget,
                     std::uint64_t& rho_remaining, std::map<BigInt, long>& exps) {
    if (n == 1) return;
    auto strip = [&](unsigned long d) {
        long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            ++e;
        }
        if (e) add_exponent(exps, BigInt(d), sign_of_exponent * e);
    };
    strip(2);
    unsigned long d = 3;
    for (; d <= budget.trial_limit; d += 2) {
        if (BigInt(d) * d > n) break;
        strip(d);
    }
    if (n == 1) return;
    if (BigInt(d) * d > n) {
        add_exponent(exps, n, sign_of_exponent);
        return;
    }
    std::map<BigInt, long> rest;
    factor_composite(n, rho_remaining, rest);
    for (const auto& [p, e] : rest) add_exponent(exps, p, sign_of_exponent * e);
}

std::uint64_t reduce(const BigInt& x, std::uint64_t p) {
    // mpz_fdiv_ui returns the least nonnegative residue.
    return mpz_fdiv_ui(x.get_mpz_t(), p);
}

} // namespace

Rat Factorization::reconstruct() const {
    Rat r(sign);
    for (const auto& [p, e] : exponents) r *= Rat(p).pow_signed(e);
    return r;
}

Factorization factor(const Rat& q, const FactorBudget& budget) {
    if (q.is_zero()) throw DegenerateInput("factor: zero has no factorization");
    Factorization f;
    f.sign = q.sign();
    std::uint64_t remaining = budget.rho_iterations;
    factor_positive(abs(q.num()), +1, budget, remaining, f.exponents);
    factor_positive(q.den(), -1, budget, remaining, f.exponents);
    return f;
}

long valuation(const Rat& q, const BigInt& p) {
    if (q.is_zero()) throw DegenerateInput("valuation of zero");
    if (p < 2) throw std::invalid_argument("valuation: p must be a prime");
    BigInt rest;
    long up = static_cast<long>(mpz_remove(rest.get_mpz_t(), q.num_ref().get_mpz_t(), p.get_mpz_t()));
    long down = static_cast<long>(mpz_remove(rest.get_mpz_t(), q.den_ref().get_mpz_t(), p.get_mpz_t()));
    return up - down;
}

long valuation(const Rat& q, std::uint64_t p) { return valuation(q, BigInt(std::to_string(p), 10)); }

namespace {

std::optional<BigInt> exact_root(const BigInt& x, unsigned long n) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) != 0) return r;
    return std::nullopt;
}

} // namespace

std::optional<Rat> nth_power_in_Q(const Rat& q, unsigned long n) {
    if (n == 0) throw std::invalid_argument("nth_power_in_Q: n must be positive");
    if (q.is_zero()) return Rat(0);
    if (q.sign() < 0 && n % 2 == 0) return std::nullopt;
    // num and den are coprime, so q = (u/v)^n forces |num| = u^n, den = v^n.
    auto u = exact_root(abs(q.num()), n);
    if (!u) return std::nullopt;
    auto v = exact_root(q.den(), n);
    if (!v) return std::nullopt;
    Rat root(*u, *v);
    return q.sign() < 0 ? -root : root;
}

std::optional<Rat> nth_power_in_Q_nonneg(const Rat& q, unsigned long n) {
    if (q.sign() < 0) return std::nullopt;
    return nth_power_in_Q(q, n);
}

PowerDecomposition max_power_decomposition(const Rat& q, const FactorBudget& budget) {
    if (q.is_zero() || q.abs().is_one()) {
        throw DegenerateInput("max_power_decomposition: input must not be 0 or +-1");
    }
    Factorization f = factor(q, budget);
    long d = 0;
    for (const auto& [p, e] : f.exponents) d = std::gcd(d, e);
    if (f.sign < 0) {
        while (d % 2 == 0) d /= 2;
    }
    Rat base(f.sign);
    for (const auto& [p, e] : f.exponents) base *= Rat(p).pow_signed(e / d);
    return {base, static_cast<unsigned long>(d)};
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exponent) {
        if (exponent & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exponent >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic below 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::uint64_t residue_mod_p(const Rat& q, std::uint64_t p) {
    std::uint64_t n = reduce(q.num_ref(), p);
    std::uint64_t d = reduce(q.den_ref(), p);
    if (n == 0 || d == 0) {
        throw BadReduction(q.str() + " does not reduce to a unit mod " + std::to_string(p));
    }
    // d^{-1} = d^{p-2} for prime p.
    return mul_mod(n, pow_mod(d, p - 2, p), p);
}

bool nth_power_residue(std::uint64_t r, std::uint64_t n, std::uint64_t p) {
    if (p == 2) return true;
    std::uint64_t g = std::gcd(n, p - 1);
    return pow_mod(r, (p - 1) / g, p) == 1;
}

bool nth_power_mod_p(const Rat& q, std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("nth_power_mod_p: n must be positive");
    return nth_power_residue(residue_mod_p(q, p), n, p);
}

int legendre(const BigInt& a, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
    std::uint64_t r = reduce(a, p);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

unsigned p_adic_order(std::uint64_t n, std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

bool nth_power_in_Qp(const Rat& q, std::uint64_t p, std::uint64_t n) {
    if (q.is_zero()) throw DegenerateInput("nth_power_in_Qp: q must be nonzero");
    if (n == 0) throw std::invalid_argument("nth_power_in_Qp: n must be positive");
    if (!is_prime(p)) throw std::invalid_argument("nth_power_in_Qp: p must be prime");

    const BigInt bp(std::to_string(p), 10);
    long v = valuation(q, bp);
    if (v % static_cast<long>(n) != 0) return false;

    BigInt pv;
    mpz_pow_ui(pv.get_mpz_t(), bp.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    Rat unit = v >= 0 ? q / Rat(pv) : q * Rat(pv);

    const unsigned e = p_adic_order(n, p);
    std::uint64_t n_prime = n;
    for (unsigned i = 0; i < e; ++i) n_prime /= p;

    if (!nth_power_mod_p(unit, n_prime, p)) return false;
    if (e == 0) return true;

    const unsigned precision = p == 2 ? e + 2 : e + 1;
    BigInt modulus;
    mpz_pow_ui(modulus.get_mpz_t(), bp.get_mpz_t(), precision);
    BigInt den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), unit.den_ref().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw BadReduction("unit part has a non-invertible denominator");
    }
    BigInt u = unit.num() * den_inv;
    mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
    if (p == 2) return u == 1;
    BigInt lifted;
    mpz_powm_ui(lifted.get_mpz_t(), u.get_mpz_t(), p - 1, modulus.get_mpz_t());
    return lifted == 1;
}

} // namespace parreg
