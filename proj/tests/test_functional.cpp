#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cci/errors.hpp"
#include "cci/functional.hpp"
#include "cci/model.hpp"
#include "test_support.hpp"

using namespace cci;
using namespace cci::testing;

namespace {

constexpr Real kPi = std::numbers::pi;

GridFunction uniform_orbital(const GridPtr& grid) {
  return {grid, ComplexVector::Constant(grid->size(), 1.0 / std::sqrt(2 * kPi))};
}

GridFunction plane_wave(const GridPtr& grid, int n) {
  ComplexVector v(grid->size());
  for (int j = 0; j < grid->size(); ++j)
    v[j] = std::polar(1.0 / std::sqrt(2 * kPi), n * grid->nodes()[j]);
  return {grid, v};
}

// Reference energy density built from independently recomputed kernels.
Complex energy_density_reference(const GridFunction& phi, const ModelParams& m,
                                 int k) {
  const GridFunction t_phi = apply_kinetic(phi);
  const GridFunction phi2 = multiply(phi, phi);
  const Complex s = crosscorr_reference(phi, phi).values[k];
  const Complex kk = crosscorr_reference(phi, t_phi).values[k];
  const Complex w = crosscorr_reference(phi2, phi2).values[k];
  return s * kk + 0.5 * m.u_tilde * (m.n_particles - 1) * w;
}

}  // namespace

TEST_CASE("ModelParams round-trips gamma and u_tilde") {
  const ModelParams m = ModelParams::from_gamma(5, -0.2);
  CHECK(m.u_tilde * (m.n_particles - 1) / (2 * kPi) ==
        doctest::Approx(-0.2).epsilon(1e-14));
  const ModelParams m2 = ModelParams::from_u_tilde(2, -0.4 * kPi);
  CHECK(m2.gamma == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK_THROWS_AS(ModelParams::from_gamma(1, -0.2), ConfigError);
}

TEST_CASE("profiles of the uniform orbital") {
  const GridPtr g = make_grid(64);
  const Profiles p = compute_profiles(uniform_orbital(g));
  for (int k = 0; k < g->size(); ++k) {
    CHECK(std::abs(p.S.values[k] - Complex(1.0)) < 1e-13);
    CHECK(std::abs(p.K.values[k]) < 1e-13);
    CHECK(std::abs(p.W.values[k] - Complex(1.0 / (2 * kPi))) < 1e-14);
  }
}

TEST_CASE("profiles of a plane wave") {
  // S and K pick up the shift phase; the quartic kernel of phi = e^{i phi}
  // carries twice the phase since the bra squared is conjugated.
  const GridPtr g = make_grid(64);
  const Profiles p = compute_profiles(plane_wave(g, 1));
  for (int k = 0; k < g->size(); ++k) {
    const Complex e1 = std::polar(1.0, -g->nodes()[k]);
    const Complex e2 = std::polar(1.0 / (2 * kPi), -2 * g->nodes()[k]);
    CHECK(std::abs(p.S.values[k] - e1) < 1e-13);
    CHECK(std::abs(p.K.values[k] - e1) < 1e-13);
    CHECK(std::abs(p.W.values[k] - e2) < 1e-13);
  }
}

TEST_CASE("profiles match the direct loops on a random orbital") {
  const GridPtr g = make_grid(48);
  const GridFunction phi = normalized(random_function(g, 3));
  const Profiles p = compute_profiles(phi);
  const GridFunction t_phi = apply_kinetic(phi);
  const GridFunction phi2 = multiply(phi, phi);
  CHECK(max_abs_diff(p.S.values, crosscorr_reference(phi, phi).values) < 1e-12);
  CHECK(max_abs_diff(p.K.values, crosscorr_reference(phi, t_phi).values) < 1e-12);
  CHECK(max_abs_diff(p.W.values, crosscorr_reference(phi2, phi2).values) < 1e-12);
}

TEST_CASE("profile invariants: S(0) = 1, K(0) >= 0, W(0) > 0") {
  const GridPtr g = make_grid(48);
  const Profiles p = compute_profiles(normalized(random_function(g, 8)));
  CHECK(std::abs(p.S.at_zero_shift() - Complex(1.0)) < 1e-12);
  CHECK(p.K.at_zero_shift().imag() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(p.K.at_zero_shift().real() >= -1e-10);
  CHECK(p.W.at_zero_shift().real() > 0.0);
}

TEST_CASE("compute_profiles rejects non-normalized input") {
  const GridPtr g = make_grid(32);
  GridFunction f = uniform_orbital(g);
  f.values *= 1.001;
  CHECK_THROWS_AS(compute_profiles(f), std::invalid_argument);
}

TEST_CASE("energy density of the uniform orbital is gamma/2 at every shift") {
  const GridPtr g = make_grid(32);
  const Profiles p = compute_profiles(uniform_orbital(g));
  for (int n : {2, 3, 7}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.2);
    for (int k = 0; k < g->size(); ++k) {
      const Complex e = energy_density(p, m, k);
      CHECK(std::abs(e - Complex(-0.1)) < 1e-13);
    }
  }
}

TEST_CASE("energy density reduces to S*K when the interaction is off") {
  const GridPtr g = make_grid(32);
  const GridFunction phi = normalized(random_function(g, 4));
  const Profiles p = compute_profiles(phi);
  const ModelParams m = ModelParams::from_u_tilde(4, 0.0);
  for (int k = 0; k < g->size(); ++k)
    CHECK(std::abs(energy_density(p, m, k) - p.S.values[k] * p.K.values[k]) <
          1e-13);
}

TEST_CASE("energy density matches the brute-force kernels") {
  const GridPtr g = make_grid(40);
  const GridFunction phi = normalized(random_function(g, 5));
  const Profiles p = compute_profiles(phi);
  const ModelParams m = ModelParams::from_gamma(3, -0.35);
  for (int k : {0, 7, g->size() / 2, g->size() - 1})
    CHECK(std::abs(energy_density(p, m, k) - energy_density_reference(phi, m, k)) <
          1e-12);
}

TEST_CASE("energy per particle: uniform orbital gives gamma/2 for every N") {
  const GridPtr g = make_grid(64);
  for (int n : {2, 3, 10, 100}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.2);
    CHECK(energy_per_particle(uniform_orbital(g), m) ==
          doctest::Approx(-0.1).epsilon(1e-12));
  }
}

TEST_CASE("energy per particle: free bosons are nonnegative, zero only uniform") {
  const GridPtr g = make_grid(48);
  const ModelParams m = ModelParams::from_gamma(5, 0.0);
  CHECK(std::abs(energy_per_particle(uniform_orbital(g), m)) < 1e-14);
  const GridFunction phi = normalized(random_function(g, 6));
  CHECK(energy_per_particle(phi, m) > 1e-4);
}

TEST_CASE("scale and translation invariance of the projected energy") {
  const GridPtr g = make_grid(48);
  const GridFunction phi = normalized(random_function(g, 7));
  const ModelParams m = ModelParams::from_gamma(4, -0.3);
  const Real base = energy_per_particle(phi, m);
  for (const Complex c : {Complex(2.5, 0.0), Complex(0.3, -1.2)}) {
    GridFunction scaled = phi;
    scaled.values *= c;
    CHECK(std::abs(energy_per_particle(scaled, m) - base) < 1e-12);
  }
  for (int a : {1, 11, 29})
    CHECK(std::abs(energy_per_particle(shift(phi, a), m) - base) < 1e-12);
}

TEST_CASE("single plane wave has no weight in the zero-momentum sector") {
  const GridPtr g = make_grid(32);
  const ModelParams m = ModelParams::from_gamma(2, -0.2);
  CHECK_THROWS_AS(energy_per_particle(plane_wave(g, 1), m),
                  DegenerateOrbitalError);
}

TEST_CASE("gradient of the uniform orbital vanishes after projection") {
  const GridPtr g = make_grid(32);
  const GridFunction phi = uniform_orbital(g);
  for (int n : {2, 3, 6}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.4);
    const GridFunction grad = cci_gradient(phi, m);
    // constant function: stationary along every direction orthogonal to phi
    for (int j = 0; j < g->size(); ++j)
      CHECK(std::abs(grad.values[j] - grad.values[0]) < 1e-13);
    const Complex radial = inner(phi, grad);
    GridFunction proj = grad;
    proj.values -= radial * phi.values;
    CHECK(proj.values.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gradient matches central finite differences") {
  const GridPtr g = make_grid(24);
  const Real h = 1e-6;
  for (int n : {2, 3, 5}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.3);
    const GridFunction phi = normalized(random_function(g, 70 + n));
    const GridFunction grad = cci_gradient(phi, m);
    CHECK(std::abs(inner(grad, phi).real()) < 1e-10);  // Euler identity
    for (int j = 0; j < g->size(); j += 5) {
      GridFunction plus = phi, minus = phi;
      plus.values[j] += h;
      minus.values[j] -= h;
      const Real fd_re =
          (energy_per_particle(plus, m) - energy_per_particle(minus, m)) / (2 * h);
      plus = phi;
      minus = phi;
      plus.values[j] += Complex(0.0, h);
      minus.values[j] -= Complex(0.0, h);
      const Real fd_im =
          (energy_per_particle(plus, m) - energy_per_particle(minus, m)) / (2 * h);
      const Complex fd(fd_re, fd_im);
      CHECK(std::abs(fd - grad.values[j]) <
            1e-6 * std::max(std::abs(grad.values[j]), 1e-4));
    }
  }
}

TEST_CASE("chemical potential density: uniform orbital gives gamma") {
  const GridPtr g = make_grid(32);
  const Profiles p = compute_profiles(uniform_orbital(g));
  for (int n : {2, 3, 7}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.2);
    const Real eps = energy_from_profiles(p, m);
    for (int k = 0; k < g->size(); ++k)
      CHECK(std::abs(chemical_potential_density(p, m, eps, k) - Complex(m.gamma)) <
            1e-12);
  }
}

TEST_CASE("chemical potential density vanishes for free uniform bosons") {
  const GridPtr g = make_grid(32);
  const Profiles p = compute_profiles(uniform_orbital(g));
  const ModelParams m = ModelParams::from_u_tilde(4, 0.0);
  const Real eps = energy_from_profiles(p, m);
  for (int k = 0; k < g->size(); ++k)
    CHECK(std::abs(chemical_potential_density(p, m, eps, k)) < 1e-13);
}

TEST_CASE("chemical potential density matches an independent recomputation") {
  const GridPtr g = make_grid(40);
  const GridFunction phi = normalized(random_function(g, 15));
  const Profiles p = compute_profiles(phi);
  const ModelParams m = ModelParams::from_gamma(4, -0.25);
  const ModelParams m_minus = ModelParams::from_u_tilde(3, m.u_tilde);
  const Real eps = energy_from_profiles(p, m);
  for (int k : {1, 9, 20, 33}) {
    const Complex s = crosscorr_reference(phi, phi).values[k];
    const Complex expected =
        s * s * static_cast<Real>(m.n_particles) * eps -
        static_cast<Real>(m.n_particles - 1) *
            energy_density_reference(phi, m_minus, k);
    CHECK(std::abs(chemical_potential_density(p, m, eps, k) - expected) < 1e-12);
  }
}

TEST_CASE("residual of the uniform orbital vanishes for every N") {
  const GridPtr g = make_grid(32);
  const GridFunction phi = uniform_orbital(g);
  for (int n : {2, 3, 5, 9}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.2);
    CHECK(cci_residual(phi, m).norm < 1e-10);
  }
}

TEST_CASE("residual of a random orbital is generically large") {
  const GridPtr g = make_grid(32);
  const GridFunction phi = normalized(random_function(g, 44));
  const ModelParams m = ModelParams::from_gamma(3, -0.2);
  CHECK(cci_residual(phi, m).norm > 1e-3);
}

TEST_CASE("gradient is proportional to the residual field") {
  // Both assemble the same stationarity condition through different paths
  // (FFT synthesis vs direct shift loops): grad = (2 delta / B) residual.
  const GridPtr g = make_grid(36);
  for (int n : {2, 3, 5}) {
    const ModelParams m = ModelParams::from_gamma(n, -0.3);
    const GridFunction phi = normalized(random_function(g, 80 + n));
    const GridFunction grad = cci_gradient(phi, m);
    const CciResidual res = cci_residual(phi, m);
    const Profiles p = compute_profiles(phi);
    Complex denom = 0.0;
    for (int k = 0; k < g->size(); ++k)
      denom += overlap_power(p.S.values[k], n);
    denom *= g->spacing();
    const Real scale = 2.0 * g->spacing() / denom.real();
    CHECK(max_abs_diff(grad.values, scale * res.pointwise.values) <
          1e-12 * std::max(1.0, grad.values.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("overlap powers underflow benignly") {
  CHECK(overlap_power(Complex(0.0), 5.0) == Complex(0.0));
  CHECK(overlap_power(Complex(1e-300, 0.0), 3.0) == Complex(0.0));
  CHECK(overlap_power(Complex(0.0), 0.0) == Complex(1.0));
  const Complex tiny = overlap_power(Complex(0.9, 0.0), 10000.0);
  CHECK(std::isfinite(tiny.real()));
  CHECK(std::abs(tiny) < 1e-250);
  const Complex neg = overlap_power(Complex(-0.5, 0.0), 3.0);
  CHECK(std::abs(neg - Complex(-0.125)) < 1e-15);
}
