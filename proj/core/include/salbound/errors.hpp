#pragma once

#include <stdexcept>
#include <string>

namespace salbound {

// Argument outside the mathematical domain of an operation (negative radius,
// non-positive coupling, too few particles, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed textual input, e.g. a potential spec such as "linear:abc".
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The reduced operator is unbounded below, so no spectral bottom exists.
class StabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A result violated an invariant that holds for correct code (for instance an
// upper bound falling below a lower bound).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace salbound
