// Command-line surface. run_cli is the whole program behind the pbcalc
// binary; it is a library function so tests can drive the real dispatch
// logic, and render_decimal is exposed because its exact output format is
// part of the contract.
#pragma once

#include <cstdint>
#include <string>

#include "primebag/rational.hpp"

namespace primebag {

// "a/b = 0.33.." for non-integers (".." marks a truncated non-terminating
// expansion), plain "6" for integers. digits must be in 1..10000.
std::string render_decimal(const Rational& q, std::uint64_t digits);

int run_cli(int argc, const char* const* argv);

} // namespace primebag
