#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cci/errors.hpp"
#include "cci/exact_two_body.hpp"
#include "cci/functional.hpp"
#include "test_support.hpp"

using namespace cci;

namespace {

constexpr Real kPi = std::numbers::pi;
const Real kU0 = -0.4 * kPi;  // two particles at gamma = -0.2

Real aligned_max_error(const TwoBodyWavefunction& a, const TwoBodyWavefunction& b) {
  Complex align = (a.values.conjugate().cwiseProduct(b.values)).sum();
  align = std::abs(align) > 0 ? align / std::abs(align) : Complex(1.0);
  return (a.values * align - b.values).cwiseAbs().maxCoeff();
}

// Neville extrapolation of the diagonalized ground energies to 1/n_max -> 0.
Real extrapolate_ground(const InteractionSpec& u, const std::vector<int>& cutoffs) {
  std::vector<Real> h, y;
  for (int k : cutoffs) {
    h.push_back(1.0 / k);
    y.push_back(solve_relative(u, Sector::even, 0, k, 0).energy);
  }
  std::vector<Real> p = y;
  const int n = static_cast<int>(h.size());
  for (int lvl = 1; lvl < n; ++lvl)
    for (int i = 0; i < n - lvl; ++i)
      p[i] = p[i + 1] + (p[i] - p[i + 1]) * (0.0 - h[i + lvl]) / (h[i] - h[i + lvl]);
  return p[0];
}

}  // namespace

TEST_CASE("odd-sector contact spectrum is the free one") {
  // the delta interaction is invisible where sin(n theta) vanishes
  const auto levels =
      relative_spectrum(InteractionSpec::contact(kU0), Sector::odd, 0, 64, 5);
  for (int n = 1; n <= 5; ++n)
    CHECK(levels[n - 1] == doctest::Approx(2.0 * n * n).epsilon(1e-12));
}

TEST_CASE("free even sector: zero ground energy, weight on k = 0") {
  const RelativeSolution s =
      solve_relative(InteractionSpec::fourier({}), Sector::even, 0, 32, 0);
  CHECK(std::abs(s.energy) < 1e-12);
  CHECK(std::abs(s.coefficient(0)) > 1e-3);
  for (int n = 1; n <= 32; ++n) CHECK(std::abs(s.coefficient(n)) < 1e-12);
}

TEST_CASE("attractive bound state: diagonalization vs secular equation") {
  // same cutoff, two routes: dense eigensolver vs rank-one root finding
  for (int n_max : {128, 512}) {
    const Real diag =
        solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, n_max, 0)
            .energy;
    const Real secular = contact_secular_ground_energy(kU0, n_max);
    CHECK(std::abs(diag - secular) < 1e-8);
  }
}

TEST_CASE("cutoff sequence extrapolates to the matching-condition energy") {
  const Real exact = contact_bound_state_energy(kU0);
  // kappa tanh(pi kappa) = |U0|/4 has kappa ~ 0.3784 here; sanity-check the
  // root against a direct evaluation of the condition
  const Real kappa = std::sqrt(-exact / 2);
  CHECK(kappa * std::tanh(kPi * kappa) == doctest::Approx(-kU0 / 4).epsilon(1e-12));
  const Real extrapolated =
      extrapolate_ground(InteractionSpec::contact(kU0), {32, 64, 128, 256, 512});
  CHECK(std::abs(extrapolated - exact) < 1e-8);
}

TEST_CASE("variational monotonicity in the basis cutoff") {
  Real last = 1e300;
  for (int n_max : {16, 32, 64, 128}) {
    const Real e =
        solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, n_max, 0)
            .energy;
    CHECK(e <= last + 1e-13);
    last = e;
  }
}

TEST_CASE("level indexing and validation") {
  const InteractionSpec u = InteractionSpec::contact(kU0);
  CHECK_THROWS_AS(solve_relative(u, Sector::even, 0, 4, 0), ConfigError);
  CHECK_THROWS_AS(solve_relative(u, Sector::even, 0, 16, 200),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_relative(u, Sector::even, 3, 16, 0),
                  std::invalid_argument);
  const auto levels = relative_spectrum(u, Sector::even, 0, 16, 3);
  CHECK(levels[0] < levels[1]);
  CHECK(levels[1] < levels[2]);
}

TEST_CASE("ground-state orbitals are real, orthogonal, and branch-consistent") {
  const GridPtr grid = make_grid(256);
  const RelativeSolution s =
      solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, 64, 0);
  // attractive contact ground state: all coefficients positive
  for (int n = 0; n <= s.n_max; ++n) {
    CHECK(s.coefficient(n).real() > 0.0);
    CHECK(std::abs(s.coefficient(n).imag()) < 1e-14);
  }
  const OrbitalPair pair = build_orbitals(s, grid);
  CHECK(pair.phi1.values.imag().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(pair.phi2.values.imag().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(inner(pair.phi1, pair.phi2)) < 1e-10);
  for (int n = 0; n <= s.n_max; ++n) {
    const Complex root = std::sqrt(s.coefficient(n));
    CHECK(std::abs(root * root - s.coefficient(n)) <=
          1e-15 * std::abs(s.coefficient(n)));
  }
}

TEST_CASE("single-mode solution gives a constant orbital and a null partner") {
  RelativeSolution s;
  s.sector = Sector::even;
  s.statistics = Statistics::symmetric;
  s.n_max = 16;
  s.coefficients = ComplexVector::Zero(17);
  s.coefficients[0] = 1.0;
  const GridPtr grid = make_grid(64);
  const OrbitalPair pair = build_orbitals(s, grid);
  for (int j = 0; j < grid->size(); ++j) {
    CHECK(std::abs(pair.phi1.values[j] - Complex(1.0 / std::sqrt(2 * kPi))) <
          1e-14);
    CHECK(std::abs(pair.phi2.values[j]) < 1e-14);
  }
}

TEST_CASE("Hartree shift integral rebuilds the bosonic ground state") {
  const GridPtr grid = make_grid(256);
  const RelativeSolution s =
      solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, 64, 0);
  const OrbitalPair pair = build_orbitals(s, grid);
  const TwoBodyWavefunction rebuilt =
      reconstruct(pair, 0, Statistics::symmetric, grid);
  const TwoBodyWavefunction direct = direct_wavefunction(s, grid);
  CHECK(aligned_max_error(rebuilt, direct) < 1e-8);
  // swap symmetry holds pointwise
  CHECK((rebuilt.values - rebuilt.values.transpose()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("an excited level with negative coefficients goes complex yet real Psi") {
  const GridPtr grid = make_grid(128);
  const RelativeSolution s =
      solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, 32, 1);
  bool has_negative = false;
  for (int n = 0; n <= s.n_max; ++n)
    if (s.coefficient(n).real() < -1e-12) has_negative = true;
  CHECK(has_negative);
  const OrbitalPair pair = build_orbitals(s, grid);
  CHECK(pair.phi1.values.imag().cwiseAbs().maxCoeff() > 1e-6);
  const TwoBodyWavefunction rebuilt =
      reconstruct(pair, 0, Statistics::symmetric, grid);
  CHECK(rebuilt.values.imag().cwiseAbs().maxCoeff() < 1e-10);
  const TwoBodyWavefunction direct = direct_wavefunction(s, grid);
  CHECK(aligned_max_error(rebuilt, direct) < 1e-8);
}

TEST_CASE("determinant shift integral rebuilds triplet states with a Pauli node") {
  const GridPtr grid = make_grid(256);
  const InteractionSpec finite_range = InteractionSpec::fourier({0.0, -0.3});
  const RelativeSolution s = solve_relative(finite_range, Sector::odd, 0, 64, 0);
  const OrbitalPair pair = build_orbitals(s, grid);
  const TwoBodyWavefunction rebuilt =
      reconstruct(pair, 0, Statistics::antisymmetric, grid);
  const TwoBodyWavefunction direct = direct_wavefunction(s, grid);
  CHECK(aligned_max_error(rebuilt, direct) < 1e-8);
  for (int j = 0; j < grid->size(); ++j)
    CHECK(std::abs(rebuilt.values(j, j)) < 1e-12);
  CHECK((rebuilt.values + rebuilt.values.transpose()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("finite-range interaction shifts both sectors, decompositions hold") {
  const GridPtr grid = make_grid(256);
  const InteractionSpec finite_range = InteractionSpec::fourier({0.0, -0.3});
  for (Sector sector : {Sector::even, Sector::odd}) {
    const RelativeSolution s = solve_relative(finite_range, sector, 0, 64, 0);
    if (sector == Sector::even)
      CHECK(s.energy < -1e-3);  // attractive shift of the free ground state
    else
      CHECK(std::abs(s.energy - 2.0) > 1e-3);  // shifted off the free 2n^2
    const OrbitalPair pair = build_orbitals(s, grid);
    const TwoBodyWavefunction rebuilt = reconstruct(
        pair, 0,
        sector == Sector::even ? Statistics::symmetric : Statistics::antisymmetric,
        grid);
    CHECK(aligned_max_error(rebuilt, direct_wavefunction(s, grid)) < 1e-8);
  }
}

TEST_CASE("moving pairs: P0 = 2 levels reconstruct and carry the momentum phase") {
  const GridPtr grid = make_grid(256);
  const int p0 = 2;
  for (int level : {0, 1, 2}) {
    const RelativeSolution s =
        solve_relative(InteractionSpec::contact(kU0), Sector::general, p0, 64, level);
    const OrbitalPair pair = build_orbitals(s, grid);
    const TwoBodyWavefunction rebuilt =
        reconstruct(pair, p0, Statistics::symmetric, grid);
    const TwoBodyWavefunction direct = direct_wavefunction(s, grid);
    CHECK(aligned_max_error(rebuilt, direct) < 1e-8);
    // momentum eigenfunction under simultaneous grid shifts
    const int a = 5;
    const int m = grid->size();
    const Complex phase = std::polar(1.0, p0 * a * grid->spacing());
    Real max_dev = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        max_dev = std::max(max_dev,
                           std::abs(rebuilt.values((i + a) % m, (j + a) % m) -
                                    phase * rebuilt.values(i, j)));
    CHECK(max_dev < 1e-10);
  }
}

TEST_CASE("odd total momentum: no self-paired mode, identity still holds") {
  const GridPtr grid = make_grid(128);
  const RelativeSolution s =
      solve_relative(InteractionSpec::contact(kU0), Sector::general, 1, 24, 0);
  const OrbitalPair pair = build_orbitals(s, grid);
  const TwoBodyWavefunction rebuilt =
      reconstruct(pair, 1, Statistics::symmetric, grid);
  CHECK(aligned_max_error(rebuilt, direct_wavefunction(s, grid)) < 1e-8);
  const MomentumStats stats = momentum_check(rebuilt);
  CHECK(stats.expectation == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(stats.variance < 1e-10);
}

TEST_CASE("momentum statistics of projected and unprojected states") {
  const GridPtr grid = make_grid(128);
  const RelativeSolution ground =
      solve_relative(InteractionSpec::contact(kU0), Sector::even, 0, 32, 0);
  const TwoBodyWavefunction rest =
      reconstruct(build_orbitals(ground, grid), 0, Statistics::symmetric, grid);
  const MomentumStats rest_stats = momentum_check(rest);
  CHECK(std::abs(rest_stats.expectation) < 1e-10);
  CHECK(rest_stats.variance < 1e-10);

  const RelativeSolution moving =
      solve_relative(InteractionSpec::contact(kU0), Sector::general, 2, 32, 0);
  const TwoBodyWavefunction p2 =
      reconstruct(build_orbitals(moving, grid), 2, Statistics::symmetric, grid);
  const MomentumStats p2_stats = momentum_check(p2);
  CHECK(p2_stats.expectation == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(p2_stats.variance < 1e-10);

  // an unprojected Hartree product of a localized orbital is not an
  // eigenfunction: its total momentum fluctuates
  ComplexVector bump(grid->size());
  for (int j = 0; j < grid->size(); ++j)
    bump[j] = std::exp(std::cos(grid->nodes()[j]));
  const GridFunction localized = normalized({grid, bump});
  TwoBodyWavefunction product{grid,
                              localized.values * localized.values.transpose(),
                              Statistics::symmetric, 0};
  const MomentumStats product_stats = momentum_check(product);
  CHECK(std::abs(product_stats.expectation) < 1e-10);
  CHECK(product_stats.variance > 0.1);
}

TEST_CASE("projected energy equals the two-body Rayleigh quotient at N = 2") {
  // Assemble the actual projected Hartree state of an arbitrary orbital
  // and evaluate <Psi|H|Psi> directly: spectral kinetic on both axes plus
  // the lattice contact term. This ties the shift-kernel functional to
  // the two-body Hamiltonian through a completely independent route.
  const int m = 64;
  const GridPtr grid = make_grid(m);
  std::mt19937 rng(314);
  std::uniform_real_distribution<Real> uni(-1.0, 1.0);
  ComplexVector v(m);
  for (int j = 0; j < m; ++j) v[j] = Complex(1.0 + 0.3 * uni(rng), 0.3 * uni(rng));
  const GridFunction phi = normalized({grid, v});

  const OrbitalPair pair{phi, phi};
  const TwoBodyWavefunction psi = reconstruct(pair, 0, Statistics::symmetric, grid);

  const Real u0 = -0.4 * kPi;
  Eigen::MatrixXcd t_psi(m, m);
  for (int j = 0; j < m; ++j) {
    const GridFunction col = apply_kinetic({grid, psi.values.col(j)});
    t_psi.col(j) = col.values;
  }
  for (int i = 0; i < m; ++i) {
    const GridFunction row =
        apply_kinetic({grid, ComplexVector(psi.values.row(i).transpose())});
    t_psi.row(i) += row.values.transpose();
  }
  const Real delta = grid->spacing();
  Complex kinetic = 0.0;
  Real contact = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      kinetic += std::conj(psi.values(i, j)) * t_psi(i, j) * delta * delta;
    contact += std::norm(psi.values(i, i)) * delta;
  }
  const Real rayleigh = (kinetic.real() + u0 * contact) / 2.0;

  const ModelParams params = ModelParams::from_u_tilde(2, u0);
  const Real functional = energy_per_particle(phi, params);
  CHECK(std::abs(rayleigh - functional) < 1e-12 * std::max(1.0, std::abs(rayleigh)));
}

TEST_CASE("shift-integral decomposition is an identity for any coefficients") {
  // random coefficient sets, including negative and complex entries
  std::mt19937 rng(99);
  std::uniform_real_distribution<Real> uni(-1.0, 1.0);
  const GridPtr grid = make_grid(64);

  for (Sector sector : {Sector::even, Sector::odd}) {
    RelativeSolution s;
    s.sector = sector;
    s.statistics =
        sector == Sector::even ? Statistics::symmetric : Statistics::antisymmetric;
    s.n_max = 12;
    s.coefficients = ComplexVector::Zero(13);
    for (int n = (sector == Sector::even ? 0 : 1); n <= 12; ++n)
      s.coefficients[n] = uni(rng);
    const OrbitalPair pair = build_orbitals(s, grid);
    const TwoBodyWavefunction rebuilt =
        reconstruct(pair, 0, s.statistics, grid);
    CHECK(aligned_max_error(rebuilt, direct_wavefunction(s, grid)) < 1e-12);
  }

  for (Statistics statistics :
       {Statistics::symmetric, Statistics::antisymmetric}) {
    const int p0 = 2;
    RelativeSolution s;
    s.sector = Sector::general;
    s.statistics = statistics;
    s.p0 = p0;
    s.n_max = 10;
    const int width = s.k_max() - s.k_min() + 1;
    s.coefficients = ComplexVector::Zero(width);
    for (int k = s.k_min(); k <= s.k_max(); ++k) {
      // enforce the swap structure A_{p0-k} = +/- A_k of the two branches
      if (k < p0 - k) continue;
      const Complex a(uni(rng), uni(rng));
      s.coefficients[k - s.k_min()] = a;
      if (k != p0 - k)
        s.coefficients[p0 - k - s.k_min()] =
            statistics == Statistics::symmetric ? a : -a;
      else if (statistics == Statistics::antisymmetric)
        s.coefficients[k - s.k_min()] = 0.0;
    }
    const OrbitalPair pair = build_orbitals(s, grid);
    const TwoBodyWavefunction rebuilt = reconstruct(pair, p0, statistics, grid);
    CHECK(aligned_max_error(rebuilt, direct_wavefunction(s, grid)) < 1e-12);
  }
}
