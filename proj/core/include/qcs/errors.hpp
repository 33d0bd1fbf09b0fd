#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

// Input validation failures carry enough context to name the offending value.
struct InvalidArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A quantile level on or outside (0,1); the estimand is undefined there.
struct BoundaryQuantileError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

// Quantile levels not strictly increasing.
struct QuantileOrderingError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

// Bandwidth outside (0, 1]; the three-image kernel wrap assumes b_n <= 1.
struct BandwidthError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

// Non-finite data where finite values are required.
struct InvalidDataError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

// Confidence level alpha outside (0,1).
struct InvalidLevelError : InvalidArgumentError {
  using InvalidArgumentError::InvalidArgumentError;
};

// A nonpositive spectral diagonal where a positive denominator is required.
struct DegenerateDenominatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed badly enough that results cannot be trusted.
struct InternalConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

// Model/stability problems in the analytic oracles.
struct StabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Singular matrix in a closed-form evaluation.
struct NumericalSingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcs
