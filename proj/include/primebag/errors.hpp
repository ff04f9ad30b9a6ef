#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace primebag {

// Base class for everything this library throws on bad input or
// exhausted limits. Internal logic errors still use the std:: hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input text that does not match a grammar (PB literal, expression, spec file).
class ParseError : public Error {
public:
    using Error::Error;
};

// Value outside an operation's domain: composite where a prime is required,
// division by zero, zero * infinity, exponent rules violated, ...
class DomainError : public Error {
public:
    using Error::Error;
};

// Operation applied to a bag outside the active number class
// (e.g. gcd on a bag with negative multiplicities).
class ModeError : public DomainError {
public:
    using DomainError::DomainError;
};

// A configured ceiling was hit: prime cache limit, conversion work budget,
// enumeration bound. The computation is abandoned, never silently degraded.
class ResourceError : public Error {
public:
    using Error::Error;
};

// "Not prime" rejection; carries the smallest factor found when the
// check stumbled over one cheaply.
class NotPrimeError : public DomainError {
public:
    NotPrimeError(const std::string& what, std::optional<std::uint64_t> factor = std::nullopt)
        : DomainError(what), smallest_factor(factor) {}

    std::optional<std::uint64_t> smallest_factor;
};

// Raised by pow in natural-output mode when a multiplicity would become
// fractional; names the index whose split is impossible.
class IrrationalityError : public DomainError {
public:
    IrrationalityError(const std::string& what, std::uint64_t index)
        : DomainError(what), offending_index(index) {}

    std::uint64_t offending_index;
};

} // namespace primebag
