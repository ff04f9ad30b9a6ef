#include "primebag/primes.hpp"

#include "primebag/errors.hpp"
#include "primebag/work_meter.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

namespace primebag {

namespace {

constexpr std::uint64_t kCountingSegment = 1ull << 22; // values per counting segment

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
        work_add();
    }
    return acc;
}

// Deterministic witness set for all 64-bit inputs.
constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod_u64(x, x, n);
        work_add();
        if (x == n - 1)
            return true;
    }
    return false;
}

// Simple sieve used for base primes of the segmented passes.
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// p_k upper-bound estimate, Rosser-style, for sizing sieve extensions.
std::uint64_t nth_prime_estimate(std::uint64_t k) {
    if (k < 6)
        return 13;
    double kd = static_cast<double>(k);
    double est = kd * (std::log(kd) + std::log(std::log(kd)));
    return static_cast<std::uint64_t>(est * 1.2) + 16;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t p : kWitnesses) {
        if (n % p == 0)
            return n == p;
    }
    for (std::uint64_t a : kWitnesses) {
        if (!strong_probable_prime_u64(n, a))
            return false;
    }
    return true;
}

bool is_prime_natural(const BigInt& n, std::uint64_t seed) {
    if (n < 2)
        return false;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && n.fits_ulong_p())
        return is_prime_u64(n.get_ui());

    // Small-prime screen.
    for (std::uint64_t p : kWitnesses) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            work_add();
            return false;
        }
        work_add();
    }

    BigInt d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);

    const std::uint64_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    std::mt19937_64 gen(seed);
    BigInt nm1 = n - 1;
    BigInt nm3 = n - 3;
    for (int round = 0; round < 64; ++round) {
        BigInt a = 2 + BigInt(gen()) % nm3;
        BigInt x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        work_add(bits);
        if (x == 1 || x == nm1)
            continue;
        bool witness = true;
        for (unsigned long i = 1; i < r; ++i) {
            x = x * x % n;
            work_add(bits);
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

PrimeCache::PrimeCache(PrimeCacheConfig cfg) : cfg_(cfg) {
    if (cfg_.store_limit < 16 || cfg_.store_limit > cfg_.hard_ceiling)
        throw DomainError("prime cache: store limit must be in [16, hard ceiling]");
    // The counting tier sieves with the dense tier's primes, so the dense
    // range must reach sqrt(hard_ceiling).
    if (cfg_.store_limit < isqrt_u64(cfg_.hard_ceiling))
        throw DomainError("prime cache: store limit must be at least sqrt(hard ceiling)");
}

void PrimeCache::ensure_dense_upto(std::uint64_t value) const {
    value = std::min(value, cfg_.store_limit);
    if (value <= sieved_to_)
        return;
    std::uint64_t lo = sieved_to_ + 1;
    std::uint64_t hi = value;
    auto base = simple_sieve(std::max<std::uint64_t>(isqrt_u64(hi), 3));
    if (lo <= 2 && 2 <= hi)
        primes_.push_back(2);

    constexpr std::uint64_t kBlock = 1ull << 20;
    std::vector<bool> mark;
    for (std::uint64_t start = lo; start <= hi; start += kBlock) {
        std::uint64_t end = std::min(hi, start + kBlock - 1);
        mark.assign(end - start + 1, false);
        for (std::uint64_t p : base) {
            if (p * p > end)
                break;
            std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (std::uint64_t m = first; m <= end; m += p)
                mark[m - start] = true;
        }
        std::uint64_t first_odd = start | 1;
        if (start <= 2 && first_odd < 3)
            first_odd = 3;
        for (std::uint64_t v = first_odd; v <= end; v += 2) {
            if (!mark[v - start] && v >= 3)
                primes_.push_back(v);
        }
    }
    sieved_to_ = hi;
}

void PrimeCache::ensure_dense_full() const {
    ensure_dense_upto(cfg_.store_limit);
}

void PrimeCache::sieve_segment(std::uint64_t seg_index, std::vector<std::uint64_t>& bits) const {
    // Segment covers (base + i*S, base + (i+1)*S]; bit j represents the odd
    // value lo + 2j. Requires the dense tier full (supplies sieving primes).
    const std::uint64_t base = cfg_.store_limit;
    const std::uint64_t lo = base + seg_index * kCountingSegment + 1;
    const std::uint64_t hi = base + (seg_index + 1) * kCountingSegment;
    const std::uint64_t first_odd = lo | 1;
    const std::uint64_t n_odds = (hi - first_odd) / 2 + 1;
    bits.assign((n_odds + 63) / 64, ~0ull);

    const std::uint64_t root = isqrt_u64(hi);
    for (std::uint64_t p : primes_) {
        if (p > root)
            break;
        if (p == 2)
            continue;
        std::uint64_t first = std::max(p * p, (first_odd + p - 1) / p * p);
        if ((first & 1) == 0)
            first += p;
        for (std::uint64_t m = first; m <= hi; m += 2 * p) {
            std::uint64_t j = (m - first_odd) / 2;
            bits[j / 64] &= ~(1ull << (j % 64));
        }
    }
    // Clear padding bits past the last odd.
    std::uint64_t tail = n_odds % 64;
    if (tail != 0)
        bits.back() &= (1ull << tail) - 1;
}

void PrimeCache::ensure_counting_upto(std::uint64_t value) const {
    if (value > cfg_.hard_ceiling)
        throw ResourceError("prime cache: query beyond hard ceiling");
    ensure_dense_full();
    std::vector<std::uint64_t> bits;
    while (cfg_.store_limit + seg_counts_.size() * kCountingSegment < value) {
        std::uint64_t i = seg_counts_.size();
        sieve_segment(i, bits);
        std::uint64_t count = 0;
        for (std::uint64_t w : bits)
            count += static_cast<std::uint64_t>(__builtin_popcountll(w));
        seg_counts_.push_back((i == 0 ? 0 : seg_counts_.back()) + count);
    }
}

std::uint64_t PrimeCache::count_upto_locked(std::uint64_t value) const {
    // pi(value) for value in the counting range; counting tier must cover it.
    const std::uint64_t base = cfg_.store_limit;
    std::uint64_t seg = (value - base - 1) / kCountingSegment;
    std::uint64_t before = seg == 0 ? 0 : seg_counts_[seg - 1];
    std::vector<std::uint64_t> bits;
    sieve_segment(seg, bits);
    const std::uint64_t first_odd = (base + seg * kCountingSegment + 1) | 1;
    std::uint64_t count = 0;
    for (std::uint64_t j = 0; first_odd + 2 * j <= value; ++j) {
        if (bits[j / 64] >> (j % 64) & 1)
            ++count;
    }
    return primes_.size() + before + count;
}

std::uint64_t PrimeCache::select_in_counting_locked(std::uint64_t rank_above_base) const {
    auto it = std::lower_bound(seg_counts_.begin(), seg_counts_.end(), rank_above_base);
    std::uint64_t seg = static_cast<std::uint64_t>(it - seg_counts_.begin());
    std::uint64_t before = seg == 0 ? 0 : seg_counts_[seg - 1];
    std::vector<std::uint64_t> bits;
    sieve_segment(seg, bits);
    const std::uint64_t first_odd = (cfg_.store_limit + seg * kCountingSegment + 1) | 1;
    std::uint64_t need = rank_above_base - before;
    for (std::uint64_t j = 0;; ++j) {
        if (bits[j / 64] >> (j % 64) & 1) {
            if (--need == 0)
                return first_odd + 2 * j;
        }
    }
}

std::uint64_t PrimeCache::nth_prime(std::uint64_t k) const {
    if (k == 0)
        throw DomainError("prime index is 1-based; 0 is not a valid index");
    {
        std::shared_lock read(mu_);
        if (k <= primes_.size())
            return primes_[k - 1];
    }
    std::unique_lock write(mu_);
    if (k <= primes_.size())
        return primes_[k - 1];
    while (primes_.size() < k && sieved_to_ < cfg_.store_limit) {
        std::uint64_t target = std::max({nth_prime_estimate(k), sieved_to_ * 2, std::uint64_t{1} << 16});
        ensure_dense_upto(target);
    }
    if (k <= primes_.size())
        return primes_[k - 1];

    std::uint64_t rank = k - primes_.size();
    while (seg_counts_.empty() || seg_counts_.back() < rank) {
        std::uint64_t frontier = cfg_.store_limit + seg_counts_.size() * kCountingSegment;
        if (frontier >= cfg_.hard_ceiling)
            throw ResourceError("nth_prime: index beyond configured prime cache ceiling");
        ensure_counting_upto(frontier + 1); // one more segment
    }
    std::uint64_t p = select_in_counting_locked(rank);
    if (p > cfg_.hard_ceiling)
        throw ResourceError("nth_prime: index beyond configured prime cache ceiling");
    return p;
}

std::uint64_t PrimeCache::prime_index(std::uint64_t p) const {
    if (!is_prime_u64(p)) {
        std::optional<std::uint64_t> factor;
        for (std::uint64_t d : kWitnesses) {
            if (p > d && p % d == 0) {
                factor = d;
                break;
            }
        }
        throw NotPrimeError("prime_index: " + std::to_string(p) + " is not prime", factor);
    }
    {
        std::shared_lock read(mu_);
        if (p <= sieved_to_) {
            auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
            return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
        }
    }
    if (p > cfg_.hard_ceiling)
        throw ResourceError("prime_index: prime above configured cache ceiling");
    std::unique_lock write(mu_);
    if (p <= cfg_.store_limit) {
        ensure_dense_upto(p);
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        return static_cast<std::uint64_t>(it - primes_.begin()) + 1;
    }
    ensure_counting_upto(p);
    return count_upto_locked(p);
}

std::uint64_t PrimeCache::prime_successor(std::uint64_t p) const {
    if (!is_prime_u64(p)) {
        std::optional<std::uint64_t> factor;
        for (std::uint64_t d : kWitnesses) {
            if (p > d && p % d == 0) {
                factor = d;
                break;
            }
        }
        throw NotPrimeError("prime_successor: " + std::to_string(p) + " is not prime", factor);
    }
    if (p == 2)
        return 3;
    {
        std::shared_lock read(mu_);
        if (p < sieved_to_) {
            auto it = std::upper_bound(primes_.begin(), primes_.end(), p);
            if (it != primes_.end())
                return *it;
        }
    }
    // Bertrand bounds the scan below 2p; MR per candidate is cheap.
    for (std::uint64_t q = p + 2;; q += 2) {
        if (is_prime_u64(q))
            return q;
    }
}

std::vector<std::uint64_t> PrimeCache::primes_upto(std::uint64_t bound) const {
    if (bound > cfg_.store_limit)
        throw DomainError("primes_upto: bound exceeds the dense store limit");
    {
        std::shared_lock read(mu_);
        if (bound <= sieved_to_) {
            auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
            return {primes_.begin(), it};
        }
    }
    std::unique_lock write(mu_);
    ensure_dense_upto(bound);
    auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.begin(), it};
}

std::uint64_t PrimeCache::stored_count() const {
    std::shared_lock read(mu_);
    return primes_.size();
}

PrimeCache& prime_cache() {
    static PrimeCache cache;
    return cache;
}

BigInt nth_prime(PrimeIndex k) {
    return BigInt(static_cast<unsigned long>(prime_cache().nth_prime(k)));
}

PrimeIndex prime_index_of(const BigInt& p) {
    if (p < 2)
        throw NotPrimeError("prime_index: " + p.get_str() + " is not prime");
    if (!fits_u64(p)) {
        if (!is_prime_natural(p))
            throw NotPrimeError("prime_index: " + p.get_str() + " is not prime");
        throw ResourceError("prime_index: prime above configured cache ceiling");
    }
    return prime_cache().prime_index(to_u64(p));
}

BigInt prime_successor(const BigInt& p) {
    if (p >= 2 && fits_u64(p) && to_u64(p) < (std::uint64_t{1} << 62))
        return BigInt(static_cast<unsigned long>(prime_cache().prime_successor(to_u64(p))));
    if (!is_prime_natural(p))
        throw NotPrimeError("prime_successor: " + p.get_str() + " is not prime");
    BigInt q = p + 2;
    while (!is_prime_natural(q))
        q += 2;
    return q;
}

} // namespace primebag
