#include "primebag/order.hpp"

#include "primebag/errors.hpp"
#include "primebag/primes.hpp"
#include "primebag/work_meter.hpp"

#include <map>

namespace primebag {

namespace {

// a's multiplicities minus b's, zeros dropped: the exponent vector of a/b.
std::map<PrimeIndex, Rational> entry_delta(const PrimeBag& a, const PrimeBag& b) {
    std::map<PrimeIndex, Rational> d = a.entries;
    for (const auto& [k, m] : b.entries) {
        work_add();
        auto [it, inserted] = d.emplace(k, -m);
        if (!inserted) {
            it->second -= m;
            if (it->second == 0)
                d.erase(it);
        }
    }
    return d;
}

// Accumulate sum of d_k * ln(p_k) into [lo, hi] with outward rounding.
void accumulate_log(const std::map<PrimeIndex, Rational>& delta, Real& lo, Real& hi) {
    mpfr_prec_t prec = lo.precision();
    Real t(prec), ln_lo(prec), ln_hi(prec), term(prec);
    for (const auto& [k, d] : delta) {
        work_add();
        BigInt p = nth_prime(k);
        mpfr_set_z(t.get(), p.get_mpz_t(), MPFR_RNDD);
        mpfr_log(ln_lo.get(), t.get(), MPFR_RNDD);
        mpfr_set_z(t.get(), p.get_mpz_t(), MPFR_RNDU);
        mpfr_log(ln_hi.get(), t.get(), MPFR_RNDU);
        if (d > 0) {
            mpfr_mul_q(term.get(), ln_lo.get(), d.get_mpq_t(), MPFR_RNDD);
            mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
            mpfr_mul_q(term.get(), ln_hi.get(), d.get_mpq_t(), MPFR_RNDU);
            mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
        } else {
            mpfr_mul_q(term.get(), ln_hi.get(), d.get_mpq_t(), MPFR_RNDD);
            mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
            mpfr_mul_q(term.get(), ln_lo.get(), d.get_mpq_t(), MPFR_RNDU);
            mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
        }
    }
}

// Sign of sum d_k ln p_k at one precision: +1 / -1, or 0 for "not separated".
int log_delta_sign(const std::map<PrimeIndex, Rational>& delta, unsigned long prec) {
    Real lo(prec), hi(prec);
    accumulate_log(delta, lo, hi);
    if (mpfr_sgn(lo.get()) > 0)
        return 1;
    if (mpfr_sgn(hi.get()) < 0)
        return -1;
    return 0;
}

// Last resort: clear denominators and compare products of prime powers.
int exact_delta_sign(const std::map<PrimeIndex, Rational>& delta) {
    BigInt scale = 1;
    for (const auto& [k, d] : delta)
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), d.get_den().get_mpz_t());
    BigInt above = 1, below = 1;
    for (const auto& [k, d] : delta) {
        work_add();
        BigInt e = d.get_num() * (scale / d.get_den());
        BigInt mag = abs(e);
        if (!mag.fits_ulong_p())
            throw ResourceError("comparison exponent too large for exact fallback");
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), nth_prime(k).get_mpz_t(), mag.get_ui());
        (e > 0 ? above : below) *= power;
    }
    return cmp(above, below);
}

// Magnitude order of two finite bags, sign ignored.
int compare_magnitude(const PrimeBag& a, const PrimeBag& b, const OrderConfig& cfg) {
    auto delta = entry_delta(a, b);
    if (delta.empty())
        return 0;
    for (unsigned long prec = cfg.start_bits; prec <= cfg.max_bits; prec *= 2) {
        int sign = log_delta_sign(delta, prec);
        if (sign != 0)
            return sign;
    }
    return exact_delta_sign(delta);
}

} // namespace

OrderResult partial_compare(const PrimeBag& a, const PrimeBag& b) {
    if (!is_natural_pb(a) || !is_natural_pb(b))
        throw ModeError("partial ordering is only defined for natural bags");
    if (a == b)
        return OrderResult::Equal;

    auto delta = entry_delta(a, b);
    bool a_dominated = true, b_dominated = true;
    for (const auto& [k, d] : delta) {
        work_add();
        (d > 0 ? a_dominated : b_dominated) = false;
    }
    if (a_dominated)
        return OrderResult::Less; // subset rule: a <= b everywhere, < somewhere
    if (b_dominated)
        return OrderResult::Greater;

    // Bertrand replacement: delta(a,b) = {1:+1, k:+1, k+1:-1} means
    // a = base * 2 * p_k vs b = base * p_{k+1}, and p_{k+1} < 2 p_k always.
    // With k = 1 the two +1 entries merge into {1:+2, 2:-1}.
    auto replacement_up = [](const std::map<PrimeIndex, Rational>& d) {
        work_add();
        if (d.size() == 2) {
            auto it = d.begin();
            if (it->first != 1 || it->second != 2)
                return false;
            ++it;
            return it->first == 2 && it->second == -1;
        }
        if (d.size() == 3) {
            auto it = d.begin();
            if (it->first != 1 || it->second != 1)
                return false;
            ++it;
            PrimeIndex k = it->first;
            if (it->second != 1)
                return false;
            ++it;
            return it->first == k + 1 && it->second == -1;
        }
        return false;
    };
    if (replacement_up(delta))
        return OrderResult::Greater;
    std::map<PrimeIndex, Rational> flipped;
    for (const auto& [k, d] : delta)
        flipped.emplace(k, -d);
    if (replacement_up(flipped))
        return OrderResult::Less;

    return OrderResult::Incomparable;
}

OrderResult exact_compare(const PrimeBag& a, const PrimeBag& b, const OrderConfig& cfg) {
    if (a.imaginary || b.imaginary)
        throw DomainError("imaginary bags have no place in the real order");
    if (a == b)
        return OrderResult::Equal;

    // Coarse band: negatives < Zero < positives < Infinity.
    auto band = [](const PrimeBag& x) {
        if (x.is_zero())
            return 0;
        if (x.is_infinity())
            return 2;
        return x.negative ? -1 : 1;
    };
    int ba = band(a), bb = band(b);
    if (ba != bb)
        return ba < bb ? OrderResult::Less : OrderResult::Greater;
    if (ba == 0 || ba == 2)
        return OrderResult::Equal; // both Zero or both Infinity

    int magnitude = compare_magnitude(a, b, cfg);
    if (ba < 0)
        magnitude = -magnitude; // more negative is smaller
    if (magnitude > 0)
        return OrderResult::Greater;
    if (magnitude < 0)
        return OrderResult::Less;
    return OrderResult::Equal; // unreachable for canonical bags; kept honest
}

RealInterval log_value(const PrimeBag& a, unsigned long precision_bits) {
    if (precision_bits < 2)
        throw DomainError("log_value needs at least 2 bits of precision");
    if (a.imaginary)
        throw DomainError("an imaginary bag has no real logarithm");
    if (a.is_zero()) {
        RealInterval r{Real(precision_bits), Real(precision_bits)};
        mpfr_set_inf(r.lo.get(), -1);
        mpfr_set_inf(r.hi.get(), -1);
        return r;
    }
    if (a.is_infinity()) {
        RealInterval r{Real(precision_bits), Real(precision_bits)};
        mpfr_set_inf(r.lo.get(), 1);
        mpfr_set_inf(r.hi.get(), 1);
        return r;
    }
    if (a.negative)
        throw DomainError("a negative value has no real logarithm");

    unsigned long work_bits = precision_bits + 32; // guard digits for the sum
    Real lo(work_bits), hi(work_bits);
    accumulate_log(a.entries, lo, hi);
    return {lo, hi};
}

PrimeBag increment_member(const PrimeBag& a, PrimeIndex k) {
    if (!is_natural_pb(a))
        throw ModeError("increment_member is only defined for natural bags");
    if (a.multiplicity_of(k) < 1)
        throw DomainError("no member with index " + std::to_string(k) + " to increment");
    PrimeBag out = a;
    out.set_multiplicity(k, out.multiplicity_of(k) - 1);
    out.set_multiplicity(k + 1, out.multiplicity_of(k + 1) + 1);
    return out;
}

} // namespace primebag
