#pragma once

#include "cci/model.hpp"
#include "cci/ring_grid.hpp"
#include "cci/solve.hpp"

namespace cci {

struct GpResult {
  GridFunction orbital;  // unit norm, recentered, phase-fixed
  Real energy_per_particle = 0.0;
  Real chemical_potential = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Mean-field energy per particle <phi|T|phi> + (u_tilde (N-1)/2) int |phi|^4,
/// the zero-shift value of the projected energy density.
Real gp_energy(const GridFunction& phi, const ModelParams& m);

/// <phi| T + u_tilde (N-1) |phi|^2 |phi>.
Real gp_chemical_potential(const GridFunction& phi, const ModelParams& m);

/// Samplewise gradient of gp_energy (re + i*im parts per sample).
GridFunction gp_gradient(const GridFunction& phi, const ModelParams& m);

/// Ground state of the mean-field functional under unit norm; the same
/// minimizer and initialization policy as the projected solve. Near the
/// |gamma| = 0.5 threshold the symmetry-broken start is required since the
/// uniform orbital is stationary at every coupling.
GpResult solve_gp(const ModelParams& params, const CciSolveConfig& config);

}  // namespace cci
