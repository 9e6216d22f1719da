#include "parreg/sieve.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace parreg {

namespace {

constexpr std::array<char, 8> kMagic = {'P', 'R', 'S', 'I', 'E', 'V', 'E', '1'};

void write_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> bytes{};
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

bool read_u64(std::istream& is, std::uint64_t& v) {
    std::array<unsigned char, 8> bytes{};
    if (!is.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return true;
}

} // namespace

PrimeSieve PrimeSieve::build(std::uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("sieve bound must be >= 2");
    // Odd-only sieve: index i stands for 2i+1.
    const std::uint64_t half = bound / 2 + 1;
    std::vector<bool> composite(half, false);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= bound; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
    }
    std::vector<std::uint64_t> primes{2};
    for (std::uint64_t i = 1; i < half; ++i) {
        const std::uint64_t v = 2 * i + 1;
        if (v > bound) break;
        if (!composite[i]) primes.push_back(v);
    }
    return PrimeSieve(bound, std::move(primes));
}

std::span<const std::uint64_t> PrimeSieve::primes_in(std::uint64_t lo_exclusive, std::uint64_t hi_inclusive) const {
    auto first = std::upper_bound(primes_.begin(), primes_.end(), lo_exclusive);
    auto last = std::upper_bound(primes_.begin(), primes_.end(), hi_inclusive);
    if (last < first) last = first;
    return {first, last};
}

void PrimeSieve::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write sieve cache " + path.string());
    os.write(kMagic.data(), kMagic.size());
    write_u64(os, bound_);
    for (std::uint64_t p : primes_) write_u64(os, p);
}

std::optional<PrimeSieve> PrimeSieve::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) return std::nullopt;
    std::uint64_t bound = 0;
    if (!read_u64(is, bound) || bound < 2) return std::nullopt;
    std::vector<std::uint64_t> primes;
    std::uint64_t p = 0;
    while (read_u64(is, p)) {
        if (!primes.empty() && p <= primes.back()) return std::nullopt;
        if (p > bound) return std::nullopt;
        primes.push_back(p);
    }
    if (primes.empty() || primes.front() != 2) return std::nullopt;
    return PrimeSieve(bound, std::move(primes));
}

std::shared_ptr<const PrimeSieve> SieveCache::get(std::uint64_t bound) {
    bound = std::max<std::uint64_t>(bound, 2);
    std::lock_guard lock(mutex_);
    if (current_ && current_->bound() >= bound) return current_;
    if (cache_file_) {
        if (auto loaded = PrimeSieve::load(*cache_file_); loaded && loaded->bound() >= bound) {
            current_ = std::make_shared<const PrimeSieve>(std::move(*loaded));
            return current_;
        }
    }
    auto fresh = std::make_shared<const PrimeSieve>(PrimeSieve::build(bound));
    if (cache_file_) {
        try {
            fresh->save(*cache_file_);
        } catch (const std::exception&) {
            // Unwritable cache location: keep the in-memory sieve.
        }
    }
    current_ = std::move(fresh);
    return current_;
}

SieveCache& SieveCache::global() {
    static SieveCache cache(resolve_path(std::nullopt));
    return cache;
}

std::optional<std::filesystem::path> SieveCache::resolve_path(std::optional<std::filesystem::path> fallback) {
    if (const char* env = std::getenv("PARREG_SIEVE_CACHE"); env && *env) return std::filesystem::path(env);
    return fallback;
}

void SieveCache::set_cache_file(std::optional<std::filesystem::path> path) {
    std::lock_guard lock(mutex_);
    cache_file_ = std::move(path);
}

} // namespace parreg
