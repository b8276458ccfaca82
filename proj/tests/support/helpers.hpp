#pragma once

#include <thetadiv/random.hpp>
#include <thetadiv/siegel.hpp>

namespace helpers {

using thetadiv::Complex;
using thetadiv::ComplexVector;

/// Omega u + v with u, v uniform in [lo, hi)^g.
inline ComplexVector random_point(thetadiv::Rng& rng, const thetadiv::SiegelMatrix& omega, double lo = 0.0,
                                  double hi = 1.0) {
  const int g = omega.genus();
  Eigen::VectorXd u(g), v(g);
  for (int i = 0; i < g; ++i) u(i) = thetadiv::uniform(rng, lo, hi);
  for (int i = 0; i < g; ++i) v(i) = thetadiv::uniform(rng, lo, hi);
  return omega.lattice_point(u, v);
}

inline Eigen::VectorXi random_integers(thetadiv::Rng& rng, int g, int bound) {
  Eigen::VectorXi out(g);
  for (int i = 0; i < g; ++i) out(i) = static_cast<int>(rng() % (2 * bound + 1)) - bound;
  return out;
}

inline ComplexVector vec(std::initializer_list<Complex> values) {
  ComplexVector out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& v : values) out(i++) = v;
  return out;
}

}  // namespace helpers
