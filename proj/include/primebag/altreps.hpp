// Two non-unique bag number systems kept deliberately un-normalized: DecBag
// (members are powers-of-ten exponents, value is their sum) and MulBag
// (members are plain integers >= 2, value is their product). Both exist to be
// compared against the prime-index bags, so operations count member work and
// nothing normalizes behind the caller's back.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "primebag/prime_bag.hpp"
#include "primebag/rational.hpp"

namespace primebag {

struct AltBagConfig {
    // Parse-time bounds. A DecBag exponent e materializes 10^e when the value
    // is computed, and MulBag members are factored by trial division, so both
    // stay small enough for that to be cheap.
    std::uint64_t decbag_exponent_cap = 1ull << 20;
    std::uint64_t mulbag_member_cap = 1ull << 20;
};

// Multiset of exponents: run-length encoded, exponent -> copies (copies >= 1).
// Empty bag is 0. {1,1,0,0} is 10+10+1+1 = 22.
struct DecBag {
    std::map<std::uint64_t, std::uint64_t> members;

    bool operator==(const DecBag& other) const { return members == other.members; }
    bool operator!=(const DecBag& other) const { return !(*this == other); }
};

// Multiset of integers >= 2: member value -> copies. Empty bag is 1.
// {4,2} and {2,2,2} both denote 8; only the all-prime form is unique.
struct MulBag {
    std::map<std::uint64_t, std::uint64_t> members;

    bool operator==(const MulBag& other) const { return members == other.members; }
    bool operator!=(const MulBag& other) const { return !(*this == other); }
};

DecBag parse_decbag(std::string_view text, const AltBagConfig& cfg = {});
std::string format_decbag(const DecBag& a);
DecBag decbag_from_natural(const BigInt& n);

// Addition is multiset union; no carrying happens.
DecBag decbag_add(const DecBag& a, const DecBag& b);

// Multiset difference. Missing members are borrowed by un-carrying the
// smallest higher exponent (10 - 1 leaves nine ones); only when nothing
// higher is left does a forced carry pull surplus up from below. Surplus
// members that never take part stay exactly as they were.
DecBag decbag_sub(const DecBag& a, const DecBag& b);

// Cross product with exponent addition: every member of a meets every member
// of b, so the member count multiplies before any normalization.
DecBag decbag_mul(const DecBag& a, const DecBag& b);

// Carries every 10 copies of e into one e+1 until all multiplicities are <= 9;
// the result reads off as decimal digits.
DecBag decbag_normalize(const DecBag& a);

BigInt decbag_value(const DecBag& a);
std::uint64_t decbag_member_count(const DecBag& a);

MulBag parse_mulbag(std::string_view text, const AltBagConfig& cfg = {});
std::string format_mulbag(const MulBag& a);

BigInt mulbag_value(const MulBag& a);

// Multiplication is multiset union, same as for prime bags.
MulBag mulbag_mul(const MulBag& a, const MulBag& b);

// Splits every member into primes; the all-prime bag is the unique form.
MulBag mulbag_normalize(const MulBag& a);

// Factor each member (cheap trial division under the member cap) and
// accumulate prime indices.
PrimeBag mulbag_to_pb(const MulBag& a);

std::uint64_t mulbag_member_count(const MulBag& a);

} // namespace primebag
