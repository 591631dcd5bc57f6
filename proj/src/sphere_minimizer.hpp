#pragma once

// Internal: monotone minimization of a phase-invariant energy over
// unit-norm grid functions, shared by the projected-energy and the
// mean-field solvers.

#include <functional>
#include <vector>

#include "cci/ring_grid.hpp"
#include "cci/solve.hpp"

namespace cci::detail {

struct SphereObjective {
  // Both callbacks are evaluated at unit-norm points only.
  std::function<Real(const GridFunction&)> energy;
  std::function<GridFunction(const GridFunction&)> gradient;
  // Stiffness offset of the spectral preconditioner 1/(n^2 + sigma).
  Real precond_sigma = 1.0;
};

struct MinimizeOutcome {
  GridFunction point;
  Real energy = 0.0;
  int iterations = 0;
  Real grad_inf_norm = 0.0;
  std::vector<Real> trace;
  bool converged = false;
};

MinimizeOutcome minimize_on_sphere(GridFunction start, const SphereObjective& obj,
                                   const CciSolveConfig& config);

}  // namespace cci::detail
