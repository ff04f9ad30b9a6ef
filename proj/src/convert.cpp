#include "primebag/convert.hpp"

#include "primebag/primes.hpp"
#include "primebag/work_meter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace primebag {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Per-thread snapshot of the dense cache prefix, so trial loops don't hold
// the cache lock or re-copy on every conversion.
const std::vector<std::uint64_t>& trial_primes(std::uint64_t bound) {
    thread_local std::vector<std::uint64_t> cached;
    thread_local std::uint64_t cached_bound = 0;
    if (bound > cached_bound) {
        cached = prime_cache().primes_upto(bound);
        cached_bound = bound;
    }
    return cached;
}

struct FactorState {
    const ConvertConfig& cfg;
    ConversionReceipt& receipt;
    std::map<BigInt, unsigned long> found; // prime -> exponent
    std::vector<BigInt> pending;           // factors not yet resolved
    BigInt current = 1;                    // the value a rho round is splitting
    std::uint64_t trial_reached = 1;       // largest trial prime attempted

    // Every rho curve step passes through here; the ceiling turns a
    // pathological input into a clean error with the partial result attached.
    void charge_rho_step() {
        ++receipt.rho_iterations;
        work_add();
        if (receipt.rho_iterations > cfg.work_ceiling)
            throw_timeout();
    }

    [[noreturn]] void throw_timeout() {
        PrimeBag partial;
        BigInt unfactored = current;
        for (const BigInt& v : pending)
            unfactored *= v;
        for (const auto& [p, e] : found) {
            try {
                partial.set_multiplicity(prime_index_of(p), e);
            } catch (const ResourceError&) {
                // index not resolvable either; report it as unfactored bulk
                BigInt power;
                mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e);
                unfactored *= power;
            }
        }
        throw ConversionTimeout(
            "factoring stopped after " + std::to_string(receipt.rho_iterations) +
                " rho steps (work ceiling " + std::to_string(cfg.work_ceiling) + ")",
            std::move(partial), std::move(unfactored));
    }
};

std::uint64_t rho_split_u64(std::uint64_t n, FactorState& st) {
    auto step = [&](std::uint64_t x, std::uint64_t c) {
        st.charge_rho_step();
        return (mulmod_u64(x, x, n) + c) % n;
    };
    for (std::uint64_t round = 0;; ++round) {
        ++st.receipt.rho_rounds;
        std::uint64_t c = 1 + splitmix64(st.cfg.rho_seed + round) % (n - 2);
        std::uint64_t y = 2 + splitmix64(st.cfg.rho_seed ^ (round + 0x51ed270b)) % (n - 3);
        std::uint64_t g = 1, q = 1, r = 1, x = 0, ys = y;
        const std::uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = step(y, c);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = step(y, c);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            // Backtrack from the last batch start, one gcd per step.
            g = 1;
            y = ys;
            while (g == 1) {
                y = step(y, c);
                g = std::gcd(x > y ? x - y : y - x, n);
            }
        }
        if (g != n)
            return g; // proper factor
        // degenerate cycle; retry with fresh polynomial constants
    }
}

BigInt rho_split_mpz(const BigInt& n, FactorState& st) {
    auto step = [&](BigInt& x, const BigInt& c) {
        st.charge_rho_step();
        x = (x * x + c) % n;
    };
    for (std::uint64_t round = 0;; ++round) {
        ++st.receipt.rho_rounds;
        BigInt c = 1 + BigInt(splitmix64(st.cfg.rho_seed + round));
        BigInt y = 2 + BigInt(splitmix64(st.cfg.rho_seed ^ (round + 0x51ed270b)));
        BigInt g = 1, q = 1, x, ys = y, diff;
        std::uint64_t r = 1;
        const std::uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                step(y, c);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y, c);
                    diff = x > y ? x - y : y - x;
                    q = q * diff % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            y = ys;
            while (g == 1) {
                step(y, c);
                diff = x > y ? x - y : y - x;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n)
            return g;
    }
}

// Trial stage: strip factors found among the cached primes. Stops early once
// p^2 exceeds the remainder (which is then prime by construction).
void trial_stage(BigInt& n, FactorState& st) {
    std::uint64_t bound = std::min(st.cfg.trial_bound, prime_cache().config().store_limit);
    const auto& primes = trial_primes(bound);
    bool small = fits_u64(n);
    std::uint64_t v = small ? to_u64(n) : 0;
    for (std::uint64_t p : primes) {
        if (p > bound)
            break; // snapshot may extend past the configured bound
        if (small) {
            if (p * p > v)
                break;
            ++st.receipt.trial_divisions;
            work_add();
            while (v % p == 0) {
                v /= p;
                ++st.found[BigInt(static_cast<unsigned long>(p))];
                ++st.receipt.trial_divisions;
                work_add();
            }
        } else {
            ++st.receipt.trial_divisions;
            work_add();
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++st.found[BigInt(static_cast<unsigned long>(p))];
                ++st.receipt.trial_divisions;
                work_add();
            }
            if (fits_u64(n)) {
                small = true;
                v = to_u64(n);
                if (p * p > v)
                    break;
            }
        }
        st.trial_reached = p;
    }
    if (small)
        n = BigInt(static_cast<unsigned long>(v));
}

// Full factorization of n >= 1 into st.found.
void factor_natural(BigInt n, FactorState& st) {
    trial_stage(n, st);
    if (n == 1)
        return;
    st.pending.push_back(n);
    while (!st.pending.empty()) {
        BigInt v = st.pending.back();
        st.pending.pop_back();
        st.current = v;

        // No factor <= trial_reached survives the trial stage, so anything
        // below its square is prime outright.
        bool prime;
        ++st.receipt.primality_tests;
        if (fits_u64(v) && to_u64(v) / st.trial_reached <= st.trial_reached) {
            prime = true;
        } else if (fits_u64(v)) {
            prime = is_prime_u64(to_u64(v));
        } else {
            prime = is_prime_natural(v, st.cfg.rho_seed);
        }
        if (prime) {
            ++st.found[v];
            st.current = 1;
            continue;
        }

        BigInt d = fits_u64(v)
                       ? BigInt(static_cast<unsigned long>(rho_split_u64(to_u64(v), st)))
                       : rho_split_mpz(v, st);
        st.current = 1;
        st.pending.push_back(d);
        st.pending.push_back(v / d);
    }
}

PrimeBag bag_from_factors(const std::map<BigInt, unsigned long>& found, bool negate) {
    PrimeBag out;
    for (const auto& [p, e] : found)
        out.set_multiplicity(prime_index_of(p),
                             negate ? -Rational(e) : Rational(e));
    return out;
}

} // namespace

Rational pb_to_rational(const PrimeBag& a) {
    if (a.is_zero())
        return 0;
    if (a.is_infinity())
        throw DomainError("infinity has no rational value");
    if (a.imaginary)
        throw DomainError("an imaginary bag has no rational value");
    BigInt num = 1, den = 1;
    for (const auto& [k, m] : a.entries) {
        work_add();
        if (m.get_den() != 1)
            throw IrrationalityError("index " + std::to_string(k) +
                                         " has fractional multiplicity " +
                                         rational_to_string(m) +
                                         "; the value is irrational",
                                     k);
        BigInt mag = abs(m.get_num());
        if (!mag.fits_ulong_p())
            throw ResourceError("multiplicity too large to evaluate");
        BigInt p = nth_prime(k);
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), mag.get_ui());
        (m > 0 ? num : den) *= power;
    }
    Rational out(num, den);
    out.canonicalize();
    if (a.negative)
        out = -out;
    return out;
}

PrimeBag natural_to_pb(const BigInt& n, ConversionReceipt* receipt, const ConvertConfig& cfg) {
    if (n < 1)
        throw DomainError("natural_to_pb needs n >= 1; use rational_to_pb for "
                          "zero and negatives");
    ConversionReceipt scratch;
    ConversionReceipt& rec = receipt ? *receipt : scratch;
    rec.input_size = digit_count(n);
    FactorState st{cfg, rec};
    factor_natural(n, st);
    return bag_from_factors(st.found, false);
}

PrimeBag rational_to_pb(const Rational& q, ConversionReceipt* receipt, const ConvertConfig& cfg) {
    ConversionReceipt scratch;
    ConversionReceipt& rec = receipt ? *receipt : scratch;
    if (q == 0) {
        rec.input_size = 1;
        return PrimeBag::zero();
    }
    BigInt num = abs(q.get_num());
    BigInt den = q.get_den();
    rec.input_size = digit_count(num) + digit_count(den);

    FactorState numerator{cfg, rec};
    factor_natural(num, numerator);
    PrimeBag out = bag_from_factors(numerator.found, false);

    FactorState denominator{cfg, rec};
    factor_natural(den, denominator);
    for (const auto& [p, e] : denominator.found)
        out.set_multiplicity(prime_index_of(p), -Rational(e));

    out.negative = q < 0;
    return out;
}

PrimeBag add(const PrimeBag& a, const PrimeBag& b, ConversionReceipt* receipt,
             const ConvertConfig& cfg) {
    return rational_to_pb(pb_to_rational(a) + pb_to_rational(b), receipt, cfg);
}

PrimeBag sub(const PrimeBag& a, const PrimeBag& b, ConversionReceipt* receipt,
             const ConvertConfig& cfg) {
    return rational_to_pb(pb_to_rational(a) - pb_to_rational(b), receipt, cfg);
}

Rational EulerPiProduct::advance_to(std::uint64_t K) {
    if (K < k_)
        throw DomainError("the Euler product only advances forward");
    while (k_ < K) {
        ++k_;
        // p_k^2 built as a bag and evaluated, per the construction.
        Rational p2 = pb_to_rational(PrimeBag::from_index(k_, 2));
        acc_ *= p2 / (p2 - 1);
    }
    return acc_;
}

Rational euler_pi_squared(std::uint64_t K) {
    if (K == 0)
        throw DomainError("the Euler product needs K >= 1");
    EulerPiProduct prod;
    return prod.advance_to(K);
}

} // namespace primebag
