#include "cci/gp.hpp"

#include <cmath>
#include <numbers>

#include "sphere_minimizer.hpp"

namespace cci {

Real gp_energy(const GridFunction& phi, const ModelParams& m) {
  const Real kinetic = inner(phi, apply_kinetic(phi)).real();
  const Real quartic =
      phi.grid->spacing() * phi.values.cwiseAbs2().cwiseAbs2().sum();
  return kinetic + 0.5 * m.u_tilde * (m.n_particles - 1) * quartic;
}

Real gp_chemical_potential(const GridFunction& phi, const ModelParams& m) {
  const Real kinetic = inner(phi, apply_kinetic(phi)).real();
  const Real quartic =
      phi.grid->spacing() * phi.values.cwiseAbs2().cwiseAbs2().sum();
  return kinetic + m.u_tilde * (m.n_particles - 1) * quartic;
}

GridFunction gp_gradient(const GridFunction& phi, const ModelParams& m) {
  const Real delta = phi.grid->spacing();
  const Real coupling = m.u_tilde * (m.n_particles - 1);
  const GridFunction t_phi = apply_kinetic(phi);
  ComplexVector g(phi.size());
  for (int j = 0; j < phi.size(); ++j)
    g[j] = 2.0 * delta *
           (t_phi.values[j] + coupling * std::norm(phi.values[j]) * phi.values[j]);
  return {phi.grid, g};
}

GpResult solve_gp(const ModelParams& params, const CciSolveConfig& config) {
  config.validate();
  const GridPtr grid = make_grid(config.grid_m);

  detail::SphereObjective obj;
  obj.energy = [&params](const GridFunction& phi) {
    return gp_energy(phi, params);
  };
  obj.gradient = [&params](const GridFunction& phi) {
    return gp_gradient(phi, params);
  };
  obj.precond_sigma = 1.0 + 2.0 * std::numbers::pi * std::abs(params.gamma);

  const detail::MinimizeOutcome mo =
      detail::minimize_on_sphere(initial_orbital(grid, config), obj, config);

  GpResult result;
  result.orbital = gauge_fix(mo.point, config.recenter);
  result.energy_per_particle = mo.energy;
  result.chemical_potential = gp_chemical_potential(result.orbital, params);
  result.iterations = mo.iterations;
  result.converged = mo.converged;
  return result;
}

}  // namespace cci
