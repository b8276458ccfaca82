#include "thetadiv/config.hpp"

#include "thetadiv/errors.hpp"

namespace thetadiv {

void validate(const Config& config) {
  if (!(config.theta_tol > 0.0 && config.theta_tol < 1.0)) {
    throw ArgumentError("theta_tol must lie in (0, 1)");
  }
  if (!(config.rel_tol > 0.0 && config.rel_tol < 1.0)) {
    throw ArgumentError("rel_tol must lie in (0, 1)");
  }
  if (config.reference_samples < 1) {
    throw ArgumentError("reference_samples must be positive");
  }
  if (config.enumeration_cap < 1 || config.target_dim_cap < 1) {
    throw ArgumentError("caps must be positive");
  }
  if (!(config.rank_threshold > 0.0 && config.rank_threshold < 1.0)) {
    throw ArgumentError("rank_threshold must lie in (0, 1)");
  }
  if (!(config.ambiguity_factor >= 1.0)) {
    throw ArgumentError("ambiguity_factor must be at least 1");
  }
  if (config.sample_factor < 4) {
    throw ArgumentError("sample_factor must be at least 4");
  }
  if (config.workers < 1) {
    throw ArgumentError("workers must be at least 1");
  }
}

}  // namespace thetadiv
