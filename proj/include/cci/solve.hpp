#pragma once

#include <cstdint>
#include <vector>

#include "cci/functional.hpp"
#include "cci/model.hpp"
#include "cci/ring_grid.hpp"

namespace cci {

enum class InitKind { uniform_plus_noise, bump };

/// Settings shared by the projected-energy and mean-field ground-state
/// solves. A symmetry-broken start is the default because the uniform
/// orbital is a stationary point at every coupling.
struct CciSolveConfig {
  int grid_m = 256;
  int max_iter = 10000;
  Real tol_grad = 1e-9;  // infinity norm of the projected gradient
  InitKind init = InitKind::bump;
  Real bump_kappa = 1.0;
  Real noise_amplitude = 1e-3;
  std::uint64_t rng_seed = 0;
  bool recenter = true;
  Real step_initial = 1.0;
  Real step_shrink = 0.5;
  Real armijo_c = 1e-4;

  void validate() const;
};

struct CciResult {
  GridFunction orbital;  // unit norm, recentered, phase-fixed
  Real energy_per_particle = 0.0;
  int iterations = 0;
  Real grad_norm = 0.0;
  Real residual_norm = 0.0;
  std::vector<Real> energy_trace;
  bool converged = false;
  Real max_imag = 0.0;  // largest |Im phi_j| after gauge fixing
};

/// Deterministic initial guess: bump exp(kappa cos phi) or the uniform
/// orbital, plus seeded complex noise, normalized and gauge-fixed.
GridFunction initial_orbital(const GridPtr& grid, const CciSolveConfig& config);

/// Moves the density peak to phi = 0 (when recenter is set) and fixes the
/// global phase so phi(0) is real and positive.
GridFunction gauge_fix(const GridFunction& f, bool recenter);

/// Minimizes the projected energy per particle over unit-norm orbitals by
/// monotone preconditioned gradient descent with backtracking line search.
/// Returns the best iterate flagged unconverged if the gradient tolerance
/// is not met within max_iter.
CciResult solve_cci(const ModelParams& params, const CciSolveConfig& config);

}  // namespace cci
