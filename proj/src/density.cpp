#include "parreg/density.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "parreg/arith.hpp"
#include "parreg/sieve.hpp"

namespace parreg {

namespace {

void check_targets(std::span<const Rat> targets, unsigned n) {
    if (n == 0) throw std::invalid_argument("density: n must be positive");
    if (targets.empty()) throw std::invalid_argument("density: no targets");
    if (targets.size() > 16) throw std::invalid_argument("density: at most 16 targets");
    for (const auto& t : targets) {
        if (t.is_zero()) throw std::invalid_argument("density: targets must be nonzero");
    }
}

std::vector<PrimeRecord> records_in(std::span<const std::uint64_t> primes, std::span<const Rat> targets, unsigned n) {
    std::vector<PrimeRecord> out;
    for (std::uint64_t p : primes) {
        PrimeRecord rec{p, {}};
        bool admissible = true;
        for (const auto& t : targets) {
            const std::uint64_t num = mpz_fdiv_ui(t.num_ref().get_mpz_t(), p);
            const std::uint64_t den = mpz_fdiv_ui(t.den_ref().get_mpz_t(), p);
            if (num == 0 || den == 0) {
                admissible = false;
                break;
            }
            const std::uint64_t r = den == 1 ? num : mul_mod(num, pow_mod(den, p - 2, p), p);
            rec.hits.push_back(nth_power_residue(r, n, p));
        }
        if (admissible) out.push_back(std::move(rec));
    }
    return out;
}

} // namespace

Rat DensitySurvey::density() const {
    if (admissible_count == 0) return Rat(0);
    return Rat(BigInt(std::to_string(hit_count), 10), BigInt(std::to_string(admissible_count), 10));
}

Rat JointSurvey::none_density() const {
    if (admissible_count == 0) return Rat(0);
    return Rat(BigInt(std::to_string(none), 10), BigInt(std::to_string(admissible_count), 10));
}

std::vector<PrimeRecord> prime_records(std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound,
                                       unsigned threads) {
    check_targets(targets, n);
    if (prime_bound < 2) return {};
    auto sieve = SieveCache::global().get(prime_bound);
    auto primes = sieve->primes_in(0, prime_bound);
    threads = std::max(1u, threads);
    if (threads == 1 || primes.size() < 1024) return records_in(primes, targets, n);

    // Contiguous chunks keep the concatenation in ascending order.
    std::vector<std::vector<PrimeRecord>> parts(threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (primes.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(primes.size(), t * chunk);
        const std::size_t hi = std::min(primes.size(), lo + chunk);
        workers.emplace_back([&, t, lo, hi] { parts[t] = records_in(primes.subspan(lo, hi - lo), targets, n); });
    }
    for (auto& w : workers) w.join();
    std::vector<PrimeRecord> out;
    for (auto& part : parts) {
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

DensitySurvey survey(const Rat& target, unsigned n, std::uint64_t prime_bound, unsigned threads) {
    const Rat targets[1] = {target};
    auto records = prime_records(targets, n, prime_bound, threads);
    DensitySurvey s{target, n, prime_bound, records.size(), 0};
    s.hit_count = static_cast<std::uint64_t>(
        std::count_if(records.begin(), records.end(), [](const PrimeRecord& r) { return r.hits[0]; }));
    return s;
}

JointSurvey joint_survey(std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound, unsigned threads) {
    auto records = prime_records(targets, n, prime_bound, threads);
    const std::size_t k = targets.size();
    const std::size_t masks = std::size_t{1} << k;

    JointSurvey js;
    js.targets.assign(targets.begin(), targets.end());
    js.n = n;
    js.prime_bound = prime_bound;
    js.admissible_count = records.size();
    js.hit_counts.assign(k, 0);
    js.pattern_counts.assign(masks, 0);
    js.subset_counts.assign(masks, 0);

    for (const auto& rec : records) {
        std::size_t pattern = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (rec.hits[i]) {
                pattern |= std::size_t{1} << i;
                ++js.hit_counts[i];
            }
        }
        ++js.pattern_counts[pattern];
    }
    for (std::size_t s = 1; s < masks; ++s) {
        for (std::size_t pattern = 0; pattern < masks; ++pattern) {
            if ((pattern & s) == s) js.subset_counts[s] += js.pattern_counts[pattern];
        }
    }
    js.none = js.pattern_counts[0];
    js.all = js.pattern_counts[masks - 1];
    js.at_least_one = js.admissible_count - js.none;
    for (std::size_t s = 1; s < masks; ++s) {
        const auto count = static_cast<std::int64_t>(js.subset_counts[s]);
        js.inclusion_exclusion += (std::popcount(s) % 2 == 1) ? count : -count;
    }
    return js;
}

void write_csv(std::ostream& os, std::span<const Rat> targets, unsigned n, std::uint64_t prime_bound,
               unsigned threads) {
    auto records = prime_records(targets, n, prime_bound, threads);
    os << "prime,p_mod_n,gcd_n_p_minus_1";
    for (const auto& t : targets) os << ",hit_" << t.str();
    os << '\n';
    for (const auto& rec : records) {
        os << rec.p << ',' << rec.p % n << ',' << std::gcd<std::uint64_t, std::uint64_t>(n, rec.p - 1);
        for (bool h : rec.hits) os << ',' << (h ? 1 : 0);
        os << '\n';
    }
}

} // namespace parreg
