#include "cci/functional.hpp"

#include <cmath>
#include <stdexcept>

#include "cci/errors.hpp"

namespace cci {

namespace {

constexpr Real kUnderflowFloor = 1e-250;

struct EnergyParts {
  ComplexVector eps_density;  // eps(N; r0) per shift node
  Complex numerator;          // sum_k S^(N-2) eps_k * delta
  Complex denominator;        // sum_k S^N * delta
  Real eps;                   // Re(numerator / denominator)
};

EnergyParts energy_parts(const Profiles& p, const ModelParams& m) {
  const int n = m.n_particles;
  const int mm = p.S.size();
  const Real delta = p.S.grid->spacing();
  const Real g_w = 0.5 * m.u_tilde * (n - 1);

  EnergyParts out;
  out.eps_density.resize(mm);
  Complex num = 0.0, den = 0.0;
  Real den_abs = 0.0;
  for (int k = 0; k < mm; ++k) {
    const Complex s = p.S.values[k];
    const Complex eps_k = s * p.K.values[k] + g_w * p.W.values[k];
    out.eps_density[k] = eps_k;
    num += overlap_power(s, n - 2) * eps_k;
    const Complex s_n = overlap_power(s, n);
    den += s_n;
    den_abs += std::abs(s_n);
  }
  out.numerator = num * delta;
  out.denominator = den * delta;
  // underflow floor plus full cancellation of the signed shift sum: either
  // way the orbital carries no weight in the zero-momentum sector
  if (std::abs(out.denominator) < kUnderflowFloor ||
      std::abs(out.denominator) < 1e-12 * delta * den_abs)
    throw DegenerateOrbitalError(
        "projected-energy denominator vanished; orbital has no weight in the "
        "zero-momentum sector");
  const Complex eps = out.numerator / out.denominator;
  if (std::abs(eps.imag()) > 1e-10 * std::max(1.0, std::abs(eps.real())))
    throw std::runtime_error("projected energy has a non-real residue");
  out.eps = eps.real();
  return out;
}

}  // namespace

Complex overlap_power(Complex s, Real p) {
  if (p == 0.0) return 1.0;
  const Real mag = std::abs(s);
  if (mag < kUnderflowFloor) return 0.0;
  return std::polar(std::exp(p * std::log(mag)), p * std::arg(s));
}

Profiles compute_profiles(const GridFunction& phi) {
  if (std::abs(norm(phi) - 1.0) > 1e-8)
    throw std::invalid_argument("compute_profiles: orbital is not unit-norm");
  const GridFunction t_phi = apply_kinetic(phi);
  const GridFunction phi2 = multiply(phi, phi);
  return {crosscorr(phi, phi), crosscorr(phi, t_phi), crosscorr(phi2, phi2)};
}

Complex energy_density(const Profiles& p, const ModelParams& m, int shift_index) {
  const Complex s = p.S.values[shift_index];
  return s * p.K.values[shift_index] +
         0.5 * m.u_tilde * (m.n_particles - 1) * p.W.values[shift_index];
}

Real energy_from_profiles(const Profiles& p, const ModelParams& m) {
  return energy_parts(p, m).eps;
}

Real energy_per_particle(const GridFunction& phi, const ModelParams& m) {
  return energy_from_profiles(compute_profiles(normalized(phi)), m);
}

Complex chemical_potential_density(const Profiles& p, const ModelParams& m,
                                   Real eps_n, int shift_index) {
  const int n = m.n_particles;
  const Complex s = p.S.values[shift_index];
  const Complex eps_nm1 = s * p.K.values[shift_index] +
                          0.5 * m.u_tilde * (n - 2) * p.W.values[shift_index];
  return s * s * static_cast<Real>(n) * eps_n -
         static_cast<Real>(n - 1) * eps_nm1;
}

GridFunction cci_gradient(const GridFunction& phi, const ModelParams& m) {
  const int n = m.n_particles;
  const int mm = phi.size();
  const Real delta = phi.grid->spacing();
  const Real g_w = 0.5 * m.u_tilde * (n - 1);

  const Profiles pr = compute_profiles(phi);
  const EnergyParts parts = energy_parts(pr, m);
  const GridFunction t_phi = apply_kinetic(phi);
  const GridFunction phi2 = multiply(phi, phi);

  // Coefficient profiles of the three shift sums contributing to
  // d eps / d conj(phi_j); the (N-2) S^(N-3) term drops for N = 2 so the
  // inverse power is never formed.
  Profile a{phi.grid, ComplexVector(mm)};
  Profile b{phi.grid, ComplexVector(mm)};
  Profile c{phi.grid, ComplexVector(mm)};
  for (int k = 0; k < mm; ++k) {
    const Complex s = pr.S.values[k];
    Complex a_k = overlap_power(s, n - 2) * pr.K.values[k] -
                  parts.eps * static_cast<Real>(n) * overlap_power(s, n - 1);
    if (n > 2)
      a_k += static_cast<Real>(n - 2) * overlap_power(s, n - 3) *
             parts.eps_density[k];
    a.values[k] = a_k;
    b.values[k] = overlap_power(s, n - 1);
    c.values[k] = overlap_power(s, n - 2);
  }

  const GridFunction term_a = convolve_shifts(a, phi);
  const GridFunction term_b = convolve_shifts(b, t_phi);
  const GridFunction term_c = convolve_shifts(c, phi2);

  const Real scale = 2.0 * delta * delta / parts.denominator.real();
  ComplexVector grad(mm);
  for (int j = 0; j < mm; ++j)
    grad[j] = scale * (term_a.values[j] + term_b.values[j] +
                       2.0 * g_w * std::conj(phi.values[j]) * term_c.values[j]);
  return {phi.grid, grad};
}

CciResidual cci_residual(const GridFunction& phi, const ModelParams& m) {
  const int n = m.n_particles;
  const int mm = phi.size();
  const Real delta = phi.grid->spacing();

  const Profiles pr = compute_profiles(phi);
  const EnergyParts parts = energy_parts(pr, m);
  const GridFunction t_phi = apply_kinetic(phi);
  const GridFunction phi2 = multiply(phi, phi);

  ComplexVector res = ComplexVector::Zero(mm);
  for (int k = 0; k < mm; ++k) {
    const Complex s = pr.S.values[k];
    const Complex w_kin = overlap_power(s, n - 1);
    const Complex w_int = m.u_tilde * (n - 1) * overlap_power(s, n - 2);
    Complex rhs;
    if (n == 2) {
      rhs = 2.0 * s * parts.eps - pr.K.values[k];
    } else {
      rhs = overlap_power(s, n - 3) *
            chemical_potential_density(pr, m, parts.eps, k);
    }
    const int shift = phi.grid->index_shift(k);
    for (int j = 0; j < mm; ++j) {
      const int jj = (j - shift + mm) % mm;
      res[j] += delta * (w_kin * t_phi.values[jj] +
                         w_int * std::conj(phi.values[j]) * phi2.values[jj] -
                         rhs * phi.values[jj]);
    }
  }
  GridFunction pointwise{phi.grid, res};
  return {pointwise, std::sqrt(delta) * res.norm()};
}

}  // namespace cci
