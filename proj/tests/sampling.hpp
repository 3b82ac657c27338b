#pragma once

// Random valid family parameters shared by the property tests and the
// acceptance binary.

#include "mpsgs/hamiltonian.hpp"
#include "oracles.hpp"

namespace sampling {

/// Draws parameters for `family`. With `boundary` the coupling sits on
/// g1 g2 = |g3|^2 (rank-one two-by-two coupling).
inline mpsgs::FamilyParams random_params(mpsgs::Family family, oracle::Rng& rng, bool boundary = false) {
  mpsgs::FamilyParams p;
  p.family = family;
  const mpsgs::FamilyUsage use = mpsgs::family_usage(family);
  if (use.g) p.g = rng.uniform(0.1, 3.0);
  if (use.g123) {
    p.g1 = rng.uniform(0.0, 3.0);
    p.g2 = rng.uniform(0.0, 3.0);
    const double bound = std::sqrt(p.g1 * p.g2);
    const double r = boundary ? bound : rng.uniform(0.0, bound);
    p.g3 = r * rng.unit_phase();
  }
  if (use.nu) {
    p.nu = rng.complex_normal();
    p.nu_prime = rng.complex_normal();
  }
  if (use.lambda3) p.lambda3 = Eigen::Matrix3cd(rng.psd(3));
  return p;
}

}  // namespace sampling
