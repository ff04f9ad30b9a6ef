#pragma once

#include <cstdint>
#include <shared_mutex>
#include <vector>

#include "primebag/rational.hpp"

namespace primebag {

// 1-based: index 1 is the prime 2.
using PrimeIndex = std::uint64_t;

inline constexpr std::uint64_t kDefaultPrimalitySeed = 0x9e3779b97f4a7c15ull;

struct PrimeCacheConfig {
    // The dense tier stores every prime up to this value.
    std::uint64_t store_limit = 1ull << 26;
    // No query is served for primes above this value; crossing it is a
    // ResourceError, never a silent degradation.
    std::uint64_t hard_ceiling = 1ull << 32;
};

// Monotone prime cache. Two tiers behind one contract:
//   - dense: a segmented sieve grown on demand, primes stored in order;
//   - counting: per-segment cumulative prime counts above the dense range,
//     with single segments re-sieved for point queries. Keeps prime_index
//     answerable up to the hard ceiling without storing ~200M primes.
// Reads run concurrently; extension is serialized and append-only, so an
// answer never changes once produced.
class PrimeCache {
public:
    explicit PrimeCache(PrimeCacheConfig cfg = {});

    // k-th prime, k >= 1. ResourceError past the hard ceiling.
    std::uint64_t nth_prime(std::uint64_t k) const;

    // Inverse of nth_prime. NotPrimeError for composite p (carrying the
    // smallest factor when trial division finds one), ResourceError for
    // primes above the hard ceiling.
    std::uint64_t prime_index(std::uint64_t p) const;

    // Smallest prime > p; requires p prime. Works above the hard ceiling
    // (no cache involved there), since Bertrand bounds the scan by 2p.
    std::uint64_t prime_successor(std::uint64_t p) const;

    // All primes <= bound, ascending; bound must be within the store limit.
    // Meant for trial-division loops that want a stable snapshot.
    std::vector<std::uint64_t> primes_upto(std::uint64_t bound) const;

    std::uint64_t stored_count() const;
    const PrimeCacheConfig& config() const { return cfg_; }

private:
    void ensure_dense_upto(std::uint64_t value) const;
    void ensure_dense_full() const;
    void ensure_counting_upto(std::uint64_t value) const;
    std::uint64_t count_upto_locked(std::uint64_t value) const;
    std::uint64_t select_in_counting_locked(std::uint64_t rank_above_base) const;
    void sieve_segment(std::uint64_t seg_index, std::vector<std::uint64_t>& bits) const;

    PrimeCacheConfig cfg_;
    mutable std::shared_mutex mu_;
    mutable std::vector<std::uint64_t> primes_;   // dense tier, ascending
    mutable std::uint64_t sieved_to_ = 1;         // dense tier covers [2, sieved_to_]
    mutable std::vector<std::uint64_t> seg_counts_; // counting tier, cumulative per segment
};

// Process-wide cache with default configuration.
PrimeCache& prime_cache();

// Deterministic Miller-Rabin for any 64-bit n (fixed witness set).
bool is_prime_u64(std::uint64_t n);

// Primality for arbitrary-precision naturals: deterministic below 2^64,
// otherwise a strong-probable-prime test with >= 64 seeded rounds
// (error bound <= 2^-128). Reproducible for a fixed seed.
bool is_prime_natural(const BigInt& n, std::uint64_t seed = kDefaultPrimalitySeed);

// Convenience wrappers over the process-wide cache.
BigInt nth_prime(PrimeIndex k);
PrimeIndex prime_index_of(const BigInt& p);
BigInt prime_successor(const BigInt& p);

} // namespace primebag
