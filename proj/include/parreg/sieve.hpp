#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace parreg {

/// All primes <= bound, ascending.
class PrimeSieve {
public:
    /// Throws std::invalid_argument when bound < 2.
    static PrimeSieve build(std::uint64_t bound);

    std::uint64_t bound() const { return bound_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    /// Primes p with lo < p <= hi (clamped to the sieve bound).
    std::span<const std::uint64_t> primes_in(std::uint64_t lo_exclusive, std::uint64_t hi_inclusive) const;

    /// Cache file: "PRSIEVE1", u64 bound, then the primes, all little-endian.
    void save(const std::filesystem::path& path) const;
    /// nullopt when the file is missing, malformed, or has a bad magic.
    static std::optional<PrimeSieve> load(const std::filesystem::path& path);

private:
    PrimeSieve(std::uint64_t bound, std::vector<std::uint64_t> primes)
        : bound_(bound), primes_(std::move(primes)) {}

    std::uint64_t bound_ = 0;
    std::vector<std::uint64_t> primes_;
};

/// Process-wide sieve store. Each published sieve is immutable; a request
/// for a larger bound publishes a new one (optionally backed by a disk
/// cache) and never mutates a sieve another thread may be reading.
class SieveCache {
public:
    explicit SieveCache(std::optional<std::filesystem::path> cache_file = std::nullopt)
        : cache_file_(std::move(cache_file)) {}

    std::shared_ptr<const PrimeSieve> get(std::uint64_t bound);

    static SieveCache& global();
    /// Path from PARREG_SIEVE_CACHE if set, else `fallback`.
    static std::optional<std::filesystem::path> resolve_path(std::optional<std::filesystem::path> fallback);
    void set_cache_file(std::optional<std::filesystem::path> path);

private:
    std::mutex mutex_;
    std::optional<std::filesystem::path> cache_file_;
    std::shared_ptr<const PrimeSieve> current_;
};

} // namespace parreg
