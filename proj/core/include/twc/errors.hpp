#pragma once

#include <stdexcept>
#include <string>

namespace twc {

// Mismatched vector lengths in a bitwise operation.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parameter outside the operation's domain (bad shift count, L < 1, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A direction of the network has no levels at all (m = n = 0).
struct DegenerateChannelError : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested scheme or pairing is not in the executable catalog.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace twc
