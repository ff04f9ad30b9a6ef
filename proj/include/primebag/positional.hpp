// Schoolbook base-10 arithmetic on digit vectors, the positional baseline the
// bag representations are benchmarked against. Every digit-level operation
// ticks the work meter, so costs here and in the bag code share one currency.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "primebag/rational.hpp"

namespace primebag {

// Little-endian decimal digits, each 0..9; empty vector is 0, no leading
// (that is, trailing) zeros.
using Digits = std::vector<std::uint8_t>;

Digits digits_of(const BigInt& n); // negative input is a domain error
BigInt digits_value(const Digits& a);

Digits positional_add(const Digits& a, const Digits& b);
Digits positional_sub(const Digits& a, const Digits& b); // underflow is a domain error
Digits positional_mul(const Digits& a, const Digits& b);

// Long division: returns {quotient, remainder}; division by zero is a domain
// error.
std::pair<Digits, Digits> positional_divmod(const Digits& a, const Digits& b);

// Euclid's algorithm by repeated division.
Digits positional_gcd(const Digits& a, const Digits& b);

} // namespace primebag
