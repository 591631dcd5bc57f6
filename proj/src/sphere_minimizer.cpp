#include "sphere_minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>

namespace cci::detail {

namespace {

GridFunction project_tangent(const GridFunction& g, const GridFunction& phi) {
  const Complex coeff = inner(phi, g);  // phi is unit-norm
  return {g.grid, g.values - coeff * phi.values};
}

Real re_dot(const ComplexVector& a, const ComplexVector& b) {
  return a.dot(b).real();
}

Real inf_norm(const GridFunction& f) {
  return f.values.cwiseAbs().maxCoeff();
}

// Limited-memory quasi-Newton state over the samplewise real coordinates
// (re, im per node); inner products are the real parts of complex dots.
struct Lbfgs {
  static constexpr int kMemory = 10;
  std::deque<ComplexVector> s, y;
  std::deque<Real> rho;

  void clear() {
    s.clear();
    y.clear();
    rho.clear();
  }

  void push(ComplexVector step, ComplexVector grad_diff) {
    const Real sy = re_dot(step, grad_diff);
    if (!(sy > 1e-12 * step.norm() * grad_diff.norm())) return;  // keep curvature
    s.push_back(std::move(step));
    y.push_back(std::move(grad_diff));
    rho.push_back(1.0 / sy);
    if (static_cast<int>(s.size()) > kMemory) {
      s.pop_front();
      y.pop_front();
      rho.pop_front();
    }
  }

  // two-loop recursion with the spectral factor as the seed metric
  GridFunction apply(const GridFunction& grad, const RealVector& precond) {
    const int n = static_cast<int>(s.size());
    ComplexVector q = grad.values;
    std::vector<Real> a(n);
    for (int i = n - 1; i >= 0; --i) {
      a[i] = rho[i] * re_dot(s[i], q);
      q -= a[i] * y[i];
    }
    GridFunction seeded = apply_mode_scale({grad.grid, q}, precond);
    q = seeded.values;
    for (int i = 0; i < n; ++i) {
      const Real b = rho[i] * re_dot(y[i], q);
      q += (a[i] - b) * s[i];
    }
    return {grad.grid, q};
  }
};

}  // namespace

MinimizeOutcome minimize_on_sphere(GridFunction start, const SphereObjective& obj,
                                   const CciSolveConfig& config) {
  const GridPtr grid = start.grid;
  const int m = grid->size();
  const Real delta = grid->spacing();

  // Seed metric 1/(2 delta (n^2 + sigma)). The samplewise Hessian of the
  // kinetic term is 2 delta T (the gradient packs both Wirtinger halves),
  // so unit steps are Newton-exact on high modes; without the factor 2
  // they sit at the stability edge and Nyquist-scale error never decays.
  RealVector precond(m);
  for (int i = 0; i < m; ++i) {
    const Real n2 = static_cast<Real>(grid->wavenumbers()[i]) *
                    static_cast<Real>(grid->wavenumbers()[i]);
    precond[i] = 1.0 / (2.0 * delta * (n2 + obj.precond_sigma));
  }

  MinimizeOutcome out;
  GridFunction phi = normalized(start);
  Real energy = obj.energy(phi);
  out.trace.push_back(energy);

  Lbfgs memory;
  GridFunction prev_point, prev_grad;
  bool have_prev = false;
  int it = 0;
  bool at_round_off_floor = false;

  for (; it < config.max_iter; ++it) {
    const GridFunction grad_perp = project_tangent(obj.gradient(phi), phi);
    out.grad_inf_norm = inf_norm(grad_perp);
    if (out.grad_inf_norm <= config.tol_grad) {
      out.converged = true;
      break;
    }
    if (have_prev)
      memory.push(phi.values - prev_point.values,
                  grad_perp.values - prev_grad.values);
    prev_point = phi;
    prev_grad = grad_perp;
    have_prev = true;

    GridFunction dir = project_tangent(memory.apply(grad_perp, precond), phi);
    dir.values *= -1.0;
    Real slope = re_dot(grad_perp.values, dir.values);
    if (!(slope < 0.0)) {  // lost curvature: restart from the seed metric
      memory.clear();
      dir = project_tangent(apply_mode_scale(grad_perp, precond), phi);
      dir.values *= -1.0;
      slope = re_dot(grad_perp.values, dir.values);
      if (!(slope < 0.0)) break;
    }

    const Real round_off = 1e-15 * std::max(1.0, std::abs(energy));
    auto evaluate = [&](Real t) {
      return obj.energy(normalized({grid, phi.values + t * dir.values}));
    };
    auto acceptable = [&](Real t, Real e) {
      return e < energy && e - energy <= config.armijo_c * t * slope + round_off;
    };

    Real trial_alpha = config.step_initial;
    bool accepted = false;
    Real trial_energy = 0.0;
    while (trial_alpha > 1e-20) {
      trial_energy = evaluate(trial_alpha);
      if (acceptable(trial_alpha, trial_energy)) {
        accepted = true;
        break;
      }
      trial_alpha *= config.step_shrink;
    }
    if (!accepted) {
      // no representable decrease left; the iterate is at the round-off
      // floor of the energy, not necessarily at the gradient tolerance
      at_round_off_floor = true;
      break;
    }

    // quadratic refinement: a bare backtracking point may sit on the far
    // side of the valley where the realized decrease is a sliver of the
    // slope prediction
    const Real t = trial_alpha;
    const Real curvature = 2.0 * (trial_energy - energy - slope * t) / (t * t);
    if (curvature > 0.0) {
      const Real t_star = std::clamp(-slope / curvature, 0.1 * t, 4.0 * t);
      const Real refined = evaluate(t_star);
      if (refined < trial_energy && acceptable(t_star, refined)) {
        trial_alpha = t_star;
        trial_energy = refined;
      }
    }

    phi = normalized({grid, phi.values + trial_alpha * dir.values});
    energy = trial_energy;
    out.trace.push_back(energy);
    out.iterations = it + 1;
  }

  // Gradient polish: energy comparisons bottom out near eps*|E| while the
  // gradient itself is still evaluated accurately, so finish the descent
  // as a quasi-Newton iteration on the stationarity condition, accepting
  // steps that shrink the projected gradient norm.
  if (!out.converged && at_round_off_floor) {
    memory.clear();  // pairs gathered at the energy floor are noise
    bool fresh = true;
    GridFunction best = phi;
    GridFunction grad_perp = project_tangent(obj.gradient(phi), phi);
    Real best_norm = inf_norm(grad_perp);
    // the line-search merit is the 2-norm (monotone along descent steps,
    // unlike the sup norm); convergence stays on the sup norm
    Real merit = grad_perp.values.norm();
    for (; it < config.max_iter; ++it) {
      const Real gi = inf_norm(grad_perp);
      if (gi < best_norm) {
        best_norm = gi;
        best = phi;
      }
      if (gi <= config.tol_grad) {
        out.converged = true;
        best = phi;
        best_norm = gi;
        break;
      }
      if (!fresh)
        memory.push(phi.values - prev_point.values,
                    grad_perp.values - prev_grad.values);
      fresh = false;
      prev_point = phi;
      prev_grad = grad_perp;

      GridFunction dir = project_tangent(memory.apply(grad_perp, precond), phi);
      Real trial_alpha = 1.0;
      bool accepted = false;
      GridFunction trial;
      GridFunction trial_grad;
      Real trial_merit = 0.0;
      while (trial_alpha > 1e-10) {
        trial = normalized({grid, phi.values - trial_alpha * dir.values});
        trial_grad = project_tangent(obj.gradient(trial), trial);
        trial_merit = trial_grad.values.norm();
        if (trial_merit < merit) {
          accepted = true;
          break;
        }
        trial_alpha *= config.step_shrink;
      }
      if (!accepted) {
        if (memory.s.empty()) break;  // nothing left to try
        memory.clear();  // retry from the seed metric
        fresh = true;
        continue;
      }
      phi = trial;
      grad_perp = trial_grad;
      merit = trial_merit;
      out.iterations = it + 1;
    }
    phi = best;
    out.grad_inf_norm = best_norm;
    energy = obj.energy(phi);
  }

  if (!out.converged)
    out.grad_inf_norm = inf_norm(project_tangent(obj.gradient(phi), phi));
  out.point = phi;
  out.energy = energy;
  return out;
}

}  // namespace cci::detail
