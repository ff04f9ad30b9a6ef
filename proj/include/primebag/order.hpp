// Ordering of bags, two ways: cheap sound structural rules that may give up
// (partial_compare), and a decision procedure that never does
// (exact_compare), so the price of certainty stays observable.
#pragma once

#include "primebag/prime_bag.hpp"
#include "primebag/real.hpp"

namespace primebag {

enum class OrderResult { Less, Equal, Greater, Incomparable };

struct OrderConfig {
    // Interval precision ladder: start here, double until the cap, then fall
    // back to exact integer cross-multiplication.
    unsigned long start_bits = 64;
    unsigned long max_bits = 4096;
};

// Cheap sound rules only, natural bags only:
//   1. structural equality;
//   2. multiplicity-wise domination (subset rule);
//   3. the Bertrand replacement rule: adding a member {1} beats bumping one
//      existing member's index by one, since p_{k+1} < 2 p_k.
// Anything else is Incomparable. Never contradicts exact_compare.
OrderResult partial_compare(const PrimeBag& a, const PrimeBag& b);

// Total order on real bags (specials included: Zero sits between negatives
// and positives, Infinity above everything). Compares sum of m_k ln p_k by
// interval arithmetic at climbing precision; structurally-equal is the only
// equality, so the ladder only ever needs to separate. Imaginary operands
// have no place in a real order.
OrderResult exact_compare(const PrimeBag& a, const PrimeBag& b, const OrderConfig& cfg = {});

// Rigorous enclosure of ln(value(a)) for positive real bags; width at most
// 2^(1-precision) * max(1, |midpoint|). Zero yields [-inf,-inf], Infinity
// [+inf,+inf].
RealInterval log_value(const PrimeBag& a, unsigned long precision_bits);

// One member with index k becomes index k+1 (multiplicity moves by 1).
// The probe half of the Bertrand property; natural bags with k present only.
PrimeBag increment_member(const PrimeBag& a, PrimeIndex k);

} // namespace primebag
