#pragma once

// Error taxonomy. Inference errors abort the run (the CLI maps them to exit
// code 4). They are distinct from model-level `fail()`, which is ordinary
// zero-probability evidence and never throws.

#include <stdexcept>
#include <string>

namespace probtree {

struct InferenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dist called with no choices left after dropping zero weights (or uniform 0).
struct EmptyChoicesError : InferenceError {
  using InferenceError::InferenceError;
};

// A choice weight is negative, NaN, or infinite.
struct InvalidWeightError : InferenceError {
  using InferenceError::InferenceError;
};

// Choice weights sum to more than 1 + kWeightSlack.
struct WeightSumError : InferenceError {
  using InferenceError::InferenceError;
};

// Tolerance on the sub-probability invariant (sum of dist weights <= 1).
inline constexpr double kWeightSlack = 1e-9;

}  // namespace probtree
