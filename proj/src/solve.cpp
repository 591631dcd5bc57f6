#include "cci/solve.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cci/errors.hpp"
#include "sphere_minimizer.hpp"

namespace cci {

void CciSolveConfig::validate() const {
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!(tol_grad > 0.0)) throw ConfigError("tol_grad must be positive");
  if (!(noise_amplitude >= 0.0)) throw ConfigError("noise_amplitude must be >= 0");
  if (!(step_initial > 0.0) || !(step_shrink > 0.0) || step_shrink >= 1.0 ||
      !(armijo_c > 0.0) || armijo_c >= 1.0)
    throw ConfigError("invalid line-search parameters");
  if (grid_m < 8 || grid_m % 2 != 0)
    throw ConfigError("grid size must be even and >= 8");
}

GridFunction initial_orbital(const GridPtr& grid, const CciSolveConfig& config) {
  const int m = grid->size();
  const int center = grid->center_index();
  ComplexVector v(m);
  if (config.init == InitKind::bump) {
    for (int j = 0; j < m; ++j)
      v[j] = std::exp(config.bump_kappa * std::cos(grid->nodes()[j]));
  } else {
    v.setConstant(1.0 / std::sqrt(2.0 * std::numbers::pi));
  }
  // Seeded complex noise, mirrored about the bump center. The ground
  // state is inversion-symmetric about its peak; an asymmetric seed
  // excites the sub-grid translation mode, whose pinning curvature is so
  // small that gradient iterations spend their whole budget relaxing it.
  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<Real> uni(-1.0, 1.0);
  auto draw = [&] {
    const Real re = uni(rng);
    const Real im = uni(rng);
    return Complex(re, im);
  };
  v[center] += config.noise_amplitude * draw();
  v[0] += config.noise_amplitude * draw();
  for (int k = 1; k < m / 2; ++k) {
    const Complex z = config.noise_amplitude * draw();
    v[(center + k) % m] += z;
    v[(center - k + m) % m] += z;
  }
  return gauge_fix(normalized({grid, v}), true);
}

GridFunction gauge_fix(const GridFunction& f, bool recenter) {
  const int m = f.size();
  const int center = f.grid->center_index();
  GridFunction out = f;
  if (recenter) {
    int peak = 0;
    Real best = -1.0;
    for (int j = 0; j < m; ++j) {
      const Real d = std::norm(f.values[j]);
      if (d > best) {
        best = d;
        peak = j;
      }
    }
    out = shift(out, (center - peak + m) % m);
  }
  const Complex c = out.values[center];
  if (std::abs(c) > 1e-300) out.values *= std::conj(c) / std::abs(c);
  return out;
}

CciResult solve_cci(const ModelParams& params, const CciSolveConfig& config) {
  config.validate();
  const GridPtr grid = make_grid(config.grid_m);

  detail::SphereObjective obj;
  obj.energy = [&params](const GridFunction& phi) {
    return energy_from_profiles(compute_profiles(phi), params);
  };
  obj.gradient = [&params](const GridFunction& phi) {
    return cci_gradient(phi, params);
  };
  obj.precond_sigma = 1.0 + 2.0 * std::numbers::pi * std::abs(params.gamma);

  const detail::MinimizeOutcome mo =
      detail::minimize_on_sphere(initial_orbital(grid, config), obj, config);

  CciResult result;
  result.orbital = gauge_fix(mo.point, config.recenter);
  result.energy_per_particle = mo.energy;
  result.iterations = mo.iterations;
  result.grad_norm = mo.grad_inf_norm;
  result.energy_trace = mo.trace;
  result.converged = mo.converged;
  result.residual_norm = cci_residual(result.orbital, params).norm;
  result.max_imag = result.orbital.values.imag().cwiseAbs().maxCoeff();
  if (result.converged && params.gamma < 0.0 && result.max_imag > 1e-8)
    throw std::runtime_error(
        "converged attractive ground-state orbital has a non-real part");
  return result;
}

}  // namespace cci
