#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace primebag {

// Arbitrary-precision naturals/integers and exact rationals. mpq_class keeps
// values canonical (lowest terms, positive denominator), which is exactly the
// ExactRational contract: gcd(|num|, den) = 1, den >= 1.
using BigInt = mpz_class;
using Rational = mpq_class;

inline bool is_integer(const Rational& q) {
    return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

inline bool fits_u64(const BigInt& n) {
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64 && n.fits_ulong_p();
}

inline std::uint64_t to_u64(const BigInt& n) { return n.get_ui(); }

// q as "a/b", or "a" when b == 1.
std::string rational_to_string(const Rational& q);

// Accepts "a", "-a", "a/b", "-a/b" and finite decimals like "0.5".
Rational parse_rational(std::string_view text);

// Decimal digit count of |n| ("size" of the positional representation).
std::size_t digit_count(const BigInt& n);

} // namespace primebag
