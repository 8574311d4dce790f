#pragma once

#include <stdexcept>
#include <string>

namespace spinwalls {

/// Rejected user input: malformed specs, dimension mismatches, violated
/// preconditions. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two evaluators of the same predicate disagreed. Never caused by user
/// input; the CLI maps this to exit code 3.
class FormulationMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact arithmetic left the representable range.
class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

} // namespace spinwalls
