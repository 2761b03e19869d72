#pragma once

#include <stdexcept>
#include <string>

namespace holopade {

// Raised when an input violates a mathematical hypothesis of the
// construction (degenerate recurrence, non-commuting operators, bad
// family parameters, ...). CLI maps this to exit code 3.
struct HypothesisError : std::runtime_error {
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when the Rodrigues image P collapses to the zero polynomial.
// CLI maps this to exit code 2.
struct PZeroError : std::runtime_error {
    explicit PZeroError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a truncated series does not carry enough coefficients to
// decide the requested question.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace holopade
