#pragma once

// Brute-force reference implementations. Nothing here calls the library's
// number theory; only GMP integer primitives and plain loops.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "parreg/radolinear.hpp"
#include "parreg/rat.hpp"

namespace oracle {

using parreg::BigInt;
using parreg::Rat;

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= bound; ++n) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

inline std::map<std::uint64_t, int> trial_factor(std::uint64_t n) {
    std::map<std::uint64_t, int> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    if (n > 1) ++out[n];
    return out;
}

/// Some x in [1, p-1] with x^n == r (mod p).
inline bool nth_power_residue(std::uint64_t r, std::uint64_t n, std::uint64_t p) {
    r %= p;
    for (std::uint64_t x = 1; x < p; ++x) {
        if (powmod(x, n, p) == r) return true;
    }
    return false;
}

/// q mod p for p not dividing numerator or denominator; nullopt otherwise.
inline std::optional<std::uint64_t> reduce(const Rat& q, std::uint64_t p) {
    const BigInt bp = static_cast<unsigned long>(p);
    BigInt num = q.num() % bp;
    if (num < 0) num += bp;
    BigInt den = q.den() % bp;
    if (num == 0 || den == 0) return std::nullopt;
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), bp.get_mpz_t());
    BigInt r = num * inv % bp;
    return r.get_ui();
}

/// Every target reduces mod p and none is an n-th power residue.
inline bool witness_qualifies(const std::vector<Rat>& targets, std::uint64_t n, std::uint64_t p) {
    for (const auto& t : targets) {
        auto r = reduce(t, p);
        if (!r || nth_power_residue(*r, n, p)) return false;
    }
    return true;
}

inline long count_divisions(BigInt& v, const BigInt& p) {
    long e = 0;
    while (v != 0 && v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

/// x^n == u (mod p^k) solvable with k = 2e+1, e = v_p(n): Hensel-sufficient.
inline bool nth_power_in_Qp(const Rat& q, std::uint64_t p, std::uint64_t n) {
    const BigInt bp = static_cast<unsigned long>(p);
    BigInt num = q.num(), den = q.den();
    const long v = count_divisions(num, bp) - count_divisions(den, bp);
    if (v % static_cast<long>(n) != 0) return false;
    unsigned e = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++e;
    BigInt mod;
    mpz_pow_ui(mod.get_mpz_t(), bp.get_mpz_t(), 2 * e + 1);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    BigInt u = num * inv % mod;
    if (u < 0) u += mod;
    const std::uint64_t M = mod.get_ui();
    const std::uint64_t target = u.get_ui();
    for (std::uint64_t x = 1; x < M; ++x) {
        if (x % p == 0) continue;
        if (powmod(x, n, M) == target) return true;
    }
    return false;
}

/// Exhaustive search for u/v with (u/v)^n = q.
inline std::optional<Rat> rational_root(const Rat& q, unsigned n) {
    if (q == 0) return Rat(0);
    const BigInt num = abs(q.num()), den = q.den();
    std::optional<BigInt> u, v;
    for (BigInt x = 1;; ++x) {
        BigInt xn;
        mpz_pow_ui(xn.get_mpz_t(), x.get_mpz_t(), n);
        if (xn == num) u = x;
        if (xn == den) v = x;
        if (xn >= num && xn >= den) break;
    }
    if (!u || !v) return std::nullopt;
    if (q < 0) {
        if (n % 2 == 0) return std::nullopt;
        return Rat(-*u, *v);
    }
    return Rat(*u, *v);
}

/// Rank of an integer matrix by fraction-free elimination.
inline std::size_t rank(std::vector<std::vector<BigInt>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Columns condition by trying every ordered set partition of the columns.
/// Entries must be integers.
inline bool columns_condition(const parreg::QMatrix& m) {
    const std::size_t cols = m.cols();
    auto entry = [&](std::size_t r, std::size_t c) { return m.at(r, c).num(); };
    auto in_span = [&](const std::vector<std::size_t>& earlier, const std::vector<std::size_t>& block) {
        std::vector<std::vector<BigInt>> base(m.rows()), aug(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            BigInt s = 0;
            for (std::size_t c : block) s += entry(r, c);
            for (std::size_t c : earlier) base[r].push_back(entry(r, c));
            aug[r] = base[r];
            aug[r].push_back(s);
        }
        if (earlier.empty()) {
            for (const auto& row : aug) {
                if (row.back() != 0) return false;
            }
            return true;
        }
        return rank(base) == rank(aug);
    };
    // Assign each column a block label; labels must form 0..k-1 with every label used.
    std::vector<std::size_t> label(cols, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < cols; ++i) total *= cols;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t x = code, k = 0;
        for (std::size_t i = 0; i < cols; ++i) {
            label[i] = x % cols;
            x /= cols;
            k = std::max(k, label[i] + 1);
        }
        std::vector<std::vector<std::size_t>> blocks(k);
        for (std::size_t i = 0; i < cols; ++i) blocks[label[i]].push_back(i);
        bool ok = true;
        std::vector<std::size_t> earlier;
        for (const auto& b : blocks) {
            if (b.empty() || !in_span(earlier, b)) {
                ok = false;
                break;
            }
            earlier.insert(earlier.end(), b.begin(), b.end());
        }
        if (ok) return true;
    }
    return false;
}

} // namespace oracle
