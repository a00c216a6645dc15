#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fontrec {

using Index = std::int64_t;

#if defined(FONTREC_SCALAR_FLOAT)
using DefaultScalar = float;
#else
using DefaultScalar = double;
#endif

// Shape or argument mismatch between tensors or layers.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: iteration did not converge, rank precondition violated.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lossless export refused because the matrix is not numerically rank-k.
struct RankExceededError : NumericError {
  double spectral_ratio;  // s[k] / s[0]
  explicit RankExceededError(double ratio)
      : NumericError("RANK_EXCEEDED: s[k]/s[0] = " + std::to_string(ratio)),
        spectral_ratio(ratio) {}
};

// Malformed files, unsupported characters, inconsistent manifests.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad command-line flags or option combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fontrec
