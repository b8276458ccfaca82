#pragma once

#include <cstddef>
#include <cstdint>

namespace thetadiv {

/// Every numerical knob of the library in one record.
///
/// A run is reproducible from this record alone: all seeds are explicit and
/// nothing reads the clock or the environment.
struct Config {
  /// Absolute (scale-normalized) truncation tolerance of theta lattice sums.
  double theta_tol = 1e-12;
  /// Vanishing threshold relative to the reference magnitude.
  double rel_tol = 1e-6;
  /// Points in the pseudo-random sample whose median |theta| is the reference.
  int reference_samples = 64;
  std::uint64_t reference_seed = 0x5eed0001;
  /// Upper limit on n^{2g} for torsion enumeration.
  std::size_t enumeration_cap = 100000;
  /// Upper limit on (a+b)^{2g}, the dimension of a multiplication map.
  std::size_t target_dim_cap = 400;
  /// Singular values below rank_threshold * sigma_max count as zero.
  double rank_threshold = 1e-7;
  /// Nothing may lie within this factor of a decision threshold.
  double ambiguity_factor = 10.0;
  /// Evaluation points per target dimension in a multiplication matrix.
  int sample_factor = 8;
  std::uint64_t sample_seed = 0x5eed0002;
  /// Worker threads for embarrassingly parallel loops (1 = serial).
  unsigned workers = 1;

  friend bool operator==(const Config&, const Config&) = default;
};

}  // namespace thetadiv

namespace thetadiv {

/// Throws ArgumentError if a field is outside its meaningful range.
void validate(const Config& config);

}  // namespace thetadiv
