#pragma once

#include <numbers>

#include "cci/errors.hpp"
#include "cci/ring_grid.hpp"

namespace cci {

/// Particle number and contact coupling in ring units. The dimensionless
/// coupling gamma = u_tilde*(N-1)/(2*pi) is negative for attraction.
struct ModelParams {
  int n_particles;
  Real gamma;
  Real u_tilde;
  int p0 = 0;

  static ModelParams from_gamma(int n, Real gamma) {
    require_n(n);
    return {n, gamma, 2.0 * std::numbers::pi * gamma / (n - 1), 0};
  }

  static ModelParams from_u_tilde(int n, Real u_tilde) {
    require_n(n);
    return {n, u_tilde * (n - 1) / (2.0 * std::numbers::pi), u_tilde, 0};
  }

 private:
  static void require_n(int n) {
    if (n < 2) throw ConfigError("particle number must be >= 2");
  }
};

}  // namespace cci
