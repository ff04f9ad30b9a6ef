// The expensive bridge between bags and positional numbers: evaluating a bag
// to an exact rational is cheap, going the other way means factoring. The
// receipt records how much work the factoring pipeline actually did.
#pragma once

#include <cstddef>
#include <cstdint>

#include "primebag/errors.hpp"
#include "primebag/prime_bag.hpp"
#include "primebag/rational.hpp"

namespace primebag {

struct ConvertConfig {
    std::uint64_t trial_bound = 100000;    // trial-divide by cached primes up to here
    std::uint64_t work_ceiling = 10000000; // rho curve steps before giving up
    std::uint64_t rho_seed = kDefaultPrimalitySeed; // polynomial constants, reproducible
};

struct ConversionReceipt {
    std::size_t input_size = 0;       // decimal digits in (or entry count of) the input
    std::uint64_t trial_divisions = 0;
    std::uint64_t rho_rounds = 0;     // rho restarts with a fresh polynomial
    std::uint64_t rho_iterations = 0; // rho curve steps
    std::uint64_t primality_tests = 0;

    std::uint64_t factoring_work() const {
        return trial_divisions + rho_iterations + primality_tests;
    }
};

// The work ceiling was hit mid-factorization. What was already split off is in
// `partial`; `partial`'s value times `unfactored` is the original input.
class ConversionTimeout : public ResourceError {
public:
    ConversionTimeout(const std::string& what, PrimeBag partial_, BigInt unfactored_)
        : ResourceError(what), partial(std::move(partial_)), unfactored(std::move(unfactored_)) {}

    PrimeBag partial;
    BigInt unfactored;
};

// Exact value of a finite real bag with integer multiplicities.
Rational pb_to_rational(const PrimeBag& a);

// Factor n >= 1 into a natural bag: trial division by cached primes, then
// Brent-variant Pollard rho with recursive splitting. 0 and negatives belong
// to rational_to_pb.
PrimeBag natural_to_pb(const BigInt& n, ConversionReceipt* receipt = nullptr,
                       const ConvertConfig& cfg = {});

// Factor numerator and denominator; denominator indices carry negated
// multiplicities; 0 becomes the Zero bag; the sign moves to the bag level.
PrimeBag rational_to_pb(const Rational& q, ConversionReceipt* receipt = nullptr,
                        const ConvertConfig& cfg = {});

// Addition and subtraction exist only by converting out and back in; the
// receipt makes that honest about the cost.
PrimeBag add(const PrimeBag& a, const PrimeBag& b, ConversionReceipt* receipt = nullptr,
             const ConvertConfig& cfg = {});
PrimeBag sub(const PrimeBag& a, const PrimeBag& b, ConversionReceipt* receipt = nullptr,
             const ConvertConfig& cfg = {});

// Truncated Euler product: 6 * prod_{k=1..K} p_k^2 / (p_k^2 - 1), exact.
// Strictly increasing in K, converging to pi^2 from below.
Rational euler_pi_squared(std::uint64_t K);

// Incremental version for sweeping K upward without recomputing the prefix.
class EulerPiProduct {
public:
    // Advance to K (>= current position) and return the exact value there.
    Rational advance_to(std::uint64_t K);
    std::uint64_t position() const { return k_; }

private:
    std::uint64_t k_ = 0;
    Rational acc_ = 6;
};

} // namespace primebag
