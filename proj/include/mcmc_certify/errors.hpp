#pragma once

#include <stdexcept>
#include <string>

namespace mcmc_certify {

// Base for everything thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nonfinite or out-of-range inputs.
struct invalid_input_error : error {
  using error::error;
};

// A bound formula needs a moment that is neither supplied nor fillable.
struct moment_unavailable_error : error {
  using error::error;
};

// Parameters outside a bound's regime (e.g. polynomial alpha <= 2/3).
struct unsupported_regime_error : error {
  using error::error;
};

// confidence_plan: no n below the ceiling qualifies.
struct infeasible_error : error {
  using error::error;
};

struct optimization_failed_error : error {
  using error::error;
};

struct convergence_error : error {
  using error::error;
};

// Observed density ratio incompatible with the claimed minorization.
struct minorization_violation_error : error {
  using error::error;
};

struct insufficient_data_error : error {
  using error::error;
};

// Toy chain grid verification failed.
struct construction_invalid_error : error {
  using error::error;
};

struct data_file_error : error {
  using error::error;
};

}  // namespace mcmc_certify
