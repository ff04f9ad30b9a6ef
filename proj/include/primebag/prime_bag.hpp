// The PrimeBag value type: a number represented as a bag of prime indices
// with exact rational multiplicities, plus the sign / imaginary-unit / zero /
// infinity extensions. All operations are pure; values are plain data.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "primebag/primes.hpp"
#include "primebag/rational.hpp"

namespace primebag {

enum class Special { Finite, Zero, Infinity };

// natural: finite, +1, real, all multiplicities positive integers
// rational: value in Q (sign and negative multiplicities fine, no i, no inf)
// extended: everything else
enum class NumberClass { NaturalPB, RationalPB, ExtendedPB };

enum class DivMode { Exact, NaturalTruncated };
enum class PbFormat { Index, Bracket };

struct PrimeBag {
    Special special = Special::Finite;
    bool negative = false;
    bool imaginary = false;
    // prime index -> nonzero multiplicity, reduced; {} with defaults is 1
    std::map<PrimeIndex, Rational> entries;

    static PrimeBag one() { return {}; }
    static PrimeBag zero() { return {Special::Zero, false, false, {}}; }
    static PrimeBag infinity() { return {Special::Infinity, false, false, {}}; }
    // Single entry p_k^m; m = 0 gives 1.
    static PrimeBag from_index(PrimeIndex k, const Rational& m = 1);

    bool is_finite() const { return special == Special::Finite; }
    bool is_zero() const { return special == Special::Zero; }
    bool is_infinity() const { return special == Special::Infinity; }
    bool is_one() const {
        return is_finite() && !negative && !imaginary && entries.empty();
    }

    // 0 when the index is absent.
    Rational multiplicity_of(PrimeIndex k) const;
    // Stores m, dropping the entry when m == 0.
    void set_multiplicity(PrimeIndex k, const Rational& m);

    bool operator==(const PrimeBag& other) const;
    bool operator!=(const PrimeBag& other) const { return !(*this == other); }
};

NumberClass classify(const PrimeBag& a);
bool is_natural_pb(const PrimeBag& a);

// Parse either grammar (index form "{2,1,-3}" / "{1:1/2}" or nested brackets
// "{{{}}}"), plus the "-" / "i" prefixes and the "0" / "inf" literals.
// Returns the canonical value; throws ParseError on malformed input.
PrimeBag parse_pb(const std::string& text);

// Canonical text. Index form repeats an index for integer multiplicities
// ("{3,1,1}", "{1,-2,-2}") and uses "k:a/b" for fractional ones; repetition
// falls back to "k:m" past 1000 copies so output stays bounded. Bracket form
// is only defined for natural bags (members must be pure towers).
std::string format_pb(const PrimeBag& a, PbFormat form = PbFormat::Index);

struct TruncationReport {
    bool truncated = false;
    std::vector<PrimeIndex> indices; // where zero-truncation kicked in
};

PrimeBag mul(const PrimeBag& a, const PrimeBag& b);
PrimeBag reciprocal(const PrimeBag& a);
PrimeBag div(const PrimeBag& a, const PrimeBag& b, DivMode mode = DivMode::Exact,
             TruncationReport* report = nullptr);
PrimeBag gcd(const PrimeBag& a, const PrimeBag& b);
PrimeBag lcm(const PrimeBag& a, const PrimeBag& b);
// natural_output enforces integer result multiplicities (the irrationality
// mechanism: {1}^(1/2) has nowhere to go in naturals).
PrimeBag pow(const PrimeBag& a, const Rational& q, bool natural_output = false);

bool is_prime_pb(const PrimeBag& a);
// Entries in canonical (descending-index) order.
std::vector<std::pair<PrimeIndex, BigInt>> factor_pb(const PrimeBag& a);
// Sum of multiplicities for natural bags, entry count otherwise.
BigInt bag_member_count(const PrimeBag& a);

} // namespace primebag
