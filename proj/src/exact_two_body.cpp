#include "cci/exact_two_body.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cci/errors.hpp"

namespace cci {

namespace {

constexpr Real kPi = std::numbers::pi;

void require_cutoff(int n_max) {
  if (n_max < 8) throw ConfigError("relative basis cutoff must be >= 8");
}

// Matrix of the relative Hamiltonian in the even basis
// {1/sqrt(2pi), cos(n theta)/sqrt(pi)} or the odd basis {sin(n theta)/sqrt(pi)}.
Eigen::MatrixXd parity_matrix(const InteractionSpec& u, Sector sector, int n_max) {
  const bool even = sector == Sector::even;
  const int dim = even ? n_max + 1 : n_max;
  const int first = even ? 0 : 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int n = first + i;
    h(i, i) = 2.0 * n * n;
  }
  for (int i = 0; i < dim; ++i) {
    const int n = first + i;
    for (int j = i; j < dim; ++j) {
      const int np = first + j;
      Real v;
      if (even && n == 0 && np == 0)
        v = u.mode_coefficient(0);
      else if (even && n == 0)
        v = u.mode_coefficient(np) / std::sqrt(2.0);
      else if (n == np)
        v = u.mode_coefficient(0) +
            (even ? 0.5 : -0.5) * u.mode_coefficient(2 * n);
      else
        v = 0.5 * (u.mode_coefficient(np - n) +
                   (even ? 1.0 : -1.0) * u.mode_coefficient(np + n));
      h(i, j) += v;
      h(j, i) = h(i, j);
    }
  }
  return h;
}

// Symmetrized plane-wave matrix for the general sector. The full basis
// d_k = e^{i k phi1} e^{i (p0-k) phi2}/(2pi) runs over the swap-closed
// window [k_min, k_max]; representatives pair k with p0 - k.
struct GeneralBasis {
  int k_min = 0;
  int k_max = 0;
  std::vector<int> reps;  // k > p0/2
  bool has_middle = false;
  int middle = 0;
};

GeneralBasis general_basis(int p0, int n_max) {
  GeneralBasis b;
  b.k_min = RelativeSolution::general_k_min(p0, n_max);
  b.k_max = RelativeSolution::general_k_max(p0, n_max);
  if (p0 % 2 == 0) {
    b.has_middle = true;
    b.middle = p0 / 2;
  }
  for (int k = b.k_max; 2 * k > p0; --k) b.reps.push_back(k);
  return b;
}

Real plane_wave_element(const InteractionSpec& u, int p0, int k, int kp) {
  const Real kin = (k == kp) ? (static_cast<Real>(k) * k +
                                static_cast<Real>(p0 - k) * (p0 - k))
                             : 0.0;
  const int d = std::abs(kp - k);
  const Real v = (d == 0) ? u.mode_coefficient(0) : 0.5 * u.mode_coefficient(d);
  return kin + v;
}

Eigen::MatrixXd general_matrix(const InteractionSpec& u, int p0,
                               const GeneralBasis& b) {
  const int n_pairs = static_cast<int>(b.reps.size());
  const int dim = n_pairs + (b.has_middle ? 1 : 0);
  Eigen::MatrixXd h(dim, dim);
  // layout: [middle (optional), pairs...]; pair vectors are
  // (d_k + d_{p0-k})/sqrt(2) and the swap invariance of H folds the four
  // cross elements into two.
  const int pair0 = b.has_middle ? 1 : 0;
  if (b.has_middle) h(0, 0) = plane_wave_element(u, p0, b.middle, b.middle);
  for (int i = 0; i < n_pairs; ++i) {
    const int k = b.reps[i];
    if (b.has_middle) {
      const Real v = std::sqrt(2.0) * plane_wave_element(u, p0, b.middle, k);
      h(0, pair0 + i) = v;
      h(pair0 + i, 0) = v;
    }
    for (int j = i; j < n_pairs; ++j) {
      const int kp = b.reps[j];
      const Real v = plane_wave_element(u, p0, k, kp) +
                     plane_wave_element(u, p0, k, p0 - kp);
      h(pair0 + i, pair0 + j) = v;
      h(pair0 + j, pair0 + i) = v;
    }
  }
  return h;
}

void require_hermitian(const Eigen::MatrixXd& h) {
  const Real dev = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::logic_error("relative Hamiltonian assembly is not Hermitian");
}

GridFunction trig_series(const GridPtr& grid, const ComplexVector& coeff,
                         bool use_cos) {
  const int m = grid->size();
  ComplexVector v = ComplexVector::Zero(m);
  const Real scale = 1.0 / std::sqrt(2.0 * kPi);
  for (int j = 0; j < m; ++j) {
    const Real phi = grid->nodes()[j];
    Complex s = use_cos ? coeff[0] : Complex(0.0);
    for (int n = 1; n < coeff.size(); ++n)
      s += coeff[n] * (use_cos ? std::cos(n * phi) : std::sin(n * phi));
    v[j] = scale * s;
  }
  return {grid, v};
}

Eigen::MatrixXcd& normalize_two_body(Eigen::MatrixXcd& psi, Real delta) {
  const Real n = delta * psi.norm();
  if (n > 0.0) psi /= n;
  return psi;
}

}  // namespace

Real InteractionSpec::mode_coefficient(int m) const {
  m = std::abs(m);
  if (kind == Kind::contact)
    return m == 0 ? strength / (2.0 * kPi) : strength / kPi;
  return m < static_cast<int>(fourier_u.size()) ? fourier_u[m] : 0.0;
}

RelativeSolution solve_relative(const InteractionSpec& u, Sector sector, int p0,
                                int n_max, int level) {
  require_cutoff(n_max);
  if (sector != Sector::general && p0 != 0)
    throw std::invalid_argument("parity sectors are defined at P0 = 0 only");

  RelativeSolution sol;
  sol.sector = sector;
  sol.statistics =
      sector == Sector::odd ? Statistics::antisymmetric : Statistics::symmetric;
  sol.p0 = p0;
  sol.n_max = n_max;
  sol.level = level;

  if (sector == Sector::even || sector == Sector::odd) {
    const Eigen::MatrixXd h = parity_matrix(u, sector, n_max);
    require_hermitian(h);
    if (level < 0 || level >= h.rows())
      throw std::invalid_argument("invalid relative level index");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    sol.energy = es.eigenvalues()[level];
    const Eigen::VectorXd v = es.eigenvectors().col(level);
    sol.coefficients = ComplexVector::Zero(n_max + 1);
    if (sector == Sector::even) {
      sol.coefficients[0] = v[0] / (2.0 * kPi);
      for (int n = 1; n <= n_max; ++n)
        sol.coefficients[n] = v[n] * std::sqrt(2.0) / kPi;
    } else {
      for (int n = 1; n <= n_max; ++n)
        sol.coefficients[n] = v[n - 1] / (kPi * std::sqrt(2.0));
    }
    return sol;
  }

  const GeneralBasis basis = general_basis(p0, n_max);
  const Eigen::MatrixXd h = general_matrix(u, p0, basis);
  require_hermitian(h);
  if (level < 0 || level >= h.rows())
    throw std::invalid_argument("invalid relative level index");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  sol.energy = es.eigenvalues()[level];
  const Eigen::VectorXd v = es.eigenvectors().col(level);
  const int width = basis.k_max - basis.k_min + 1;
  ComplexVector full = ComplexVector::Zero(width);  // u_k over the window
  const int pair0 = basis.has_middle ? 1 : 0;
  if (basis.has_middle) full[basis.middle - basis.k_min] = v[0];
  for (size_t i = 0; i < basis.reps.size(); ++i) {
    const int k = basis.reps[i];
    full[k - basis.k_min] = v[pair0 + i] / std::sqrt(2.0);
    full[p0 - k - basis.k_min] = v[pair0 + i] / std::sqrt(2.0);
  }
  sol.coefficients = full / (4.0 * kPi);  // A_k with A_k + A_{p0-k} = u_k/(2pi)
  return sol;
}

std::vector<Real> relative_spectrum(const InteractionSpec& u, Sector sector,
                                    int p0, int n_max, int count) {
  require_cutoff(n_max);
  Eigen::MatrixXd h;
  if (sector == Sector::general)
    h = general_matrix(u, p0, general_basis(p0, n_max));
  else
    h = parity_matrix(u, sector, n_max);
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const int n = std::min<int>(count, static_cast<int>(h.rows()));
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

Real contact_bound_state_energy(Real u0) {
  if (!(u0 < 0.0))
    throw std::invalid_argument("bound state requires attractive contact U0 < 0");
  const Real target = std::abs(u0) / 4.0;
  Real lo = 0.0, hi = std::max(1.0, 2.0 * target);
  while (hi * std::tanh(kPi * hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const Real mid = 0.5 * (lo + hi);
    (mid * std::tanh(kPi * mid) < target ? lo : hi) = mid;
  }
  const Real kappa = 0.5 * (lo + hi);
  return -2.0 * kappa * kappa;
}

Real contact_secular_ground_energy(Real u0, int n_max) {
  if (!(u0 < 0.0))
    throw std::invalid_argument("secular ground state requires U0 < 0");
  auto f = [&](Real e_abs) {
    Real s = (1.0 / (2.0 * kPi)) / e_abs;
    for (int n = 1; n <= n_max; ++n) s += (1.0 / kPi) / (2.0 * n * n + e_abs);
    return std::abs(u0) * s;  // = 1 at the root; decreasing in e_abs
  };
  Real lo = 1e-14, hi = 1.0;
  while (f(hi) > 1.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const Real mid = 0.5 * (lo + hi);
    (f(mid) > 1.0 ? lo : hi) = mid;
  }
  return -0.5 * (lo + hi);
}

OrbitalPair build_orbitals(const RelativeSolution& sol, const GridPtr& grid) {
  const int m = grid->size();
  if (sol.sector == Sector::general) {
    if (std::max(std::abs(sol.k_min()), std::abs(sol.k_max())) > m / 2 - 1)
      throw std::invalid_argument("grid too coarse for the coefficient window");
    const int width = sol.k_max() - sol.k_min() + 1;
    ComplexVector root_a(width), root_a_swapped(width);
    for (int k = sol.k_min(); k <= sol.k_max(); ++k) {
      root_a[k - sol.k_min()] = std::sqrt(sol.coefficient(k));
      root_a_swapped[k - sol.k_min()] = std::sqrt(sol.coefficient(sol.p0 - k));
    }
    ComplexVector v1 = ComplexVector::Zero(m), v2 = ComplexVector::Zero(m);
    const Real scale = 1.0 / std::sqrt(2.0 * kPi);
    for (int j = 0; j < m; ++j) {
      const Real phi = grid->nodes()[j];
      Complex s1 = 0.0, s2 = 0.0;
      for (int k = sol.k_min(); k <= sol.k_max(); ++k) {
        const Complex e = std::polar(1.0, k * phi);
        s1 += root_a[k - sol.k_min()] * e;
        s2 += root_a_swapped[k - sol.k_min()] * e;
      }
      v1[j] = scale * s1;
      v2[j] = scale * s2;
    }
    return {{grid, v1}, {grid, v2}};
  }

  if (sol.n_max > m / 2 - 1)
    throw std::invalid_argument("grid too coarse for the coefficient window");
  ComplexVector root_a(sol.coefficients.size());
  for (int n = 0; n < root_a.size(); ++n)
    root_a[n] = std::sqrt(sol.coefficients[n]);
  if (sol.sector == Sector::odd) root_a[0] = 0.0;
  return {trig_series(grid, root_a, true), trig_series(grid, root_a, false)};
}

TwoBodyWavefunction reconstruct(const OrbitalPair& pair, int p0,
                                Statistics statistics, const GridPtr& grid) {
  const int m = grid->size();
  const Real delta = grid->spacing();
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(m, m);
  const Real sign = statistics == Statistics::symmetric ? 1.0 : -1.0;
  for (int k = 0; k < m; ++k) {
    const int s = grid->index_shift(k);
    const GridFunction u = shift(pair.phi1, s);
    const Complex w = delta * std::polar(1.0, p0 * grid->nodes()[k]);
    if (p0 == 0 && statistics == Statistics::symmetric) {
      psi.noalias() += w * (u.values * u.values.transpose());
    } else {
      const GridFunction v = shift(pair.phi2, s);
      psi.noalias() += w * (u.values * v.values.transpose() +
                            sign * v.values * u.values.transpose());
    }
  }
  normalize_two_body(psi, delta);
  return {grid, psi, statistics, p0};
}

TwoBodyWavefunction direct_wavefunction(const RelativeSolution& sol,
                                        const GridPtr& grid) {
  const int m = grid->size();
  const Real delta = grid->spacing();
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(m, m);

  if (sol.sector == Sector::general) {
    const Real sign = sol.statistics == Statistics::symmetric ? 1.0 : -1.0;
    ComplexVector u(m), w(m);
    for (int k = sol.k_min(); k <= sol.k_max(); ++k) {
      const Complex a = sol.coefficient(k);
      if (a == Complex(0.0)) continue;
      for (int j = 0; j < m; ++j) {
        u[j] = std::polar(1.0, k * grid->nodes()[j]);
        w[j] = std::polar(1.0, (sol.p0 - k) * grid->nodes()[j]);
      }
      psi.noalias() += a * (u * w.transpose() + sign * w * u.transpose());
    }
  } else {
    RealVector c(m), s(m);
    if (sol.sector == Sector::even)
      psi.array() += sol.coefficients[0];
    for (int n = 1; n < sol.coefficients.size(); ++n) {
      const Complex a = sol.coefficients[n];
      if (a == Complex(0.0)) continue;
      for (int j = 0; j < m; ++j) {
        c[j] = std::cos(n * grid->nodes()[j]);
        s[j] = std::sin(n * grid->nodes()[j]);
      }
      if (sol.sector == Sector::even)
        psi.noalias() +=
            0.5 * a * (c * c.transpose() + s * s.transpose()).cast<Complex>();
      else
        psi.noalias() +=
            a * (s * c.transpose() - c * s.transpose()).cast<Complex>();
    }
  }
  normalize_two_body(psi, delta);
  return {grid, psi, sol.statistics, sol.p0};
}

MomentumStats momentum_check(const TwoBodyWavefunction& psi) {
  const int m = psi.grid->size();
  thread_local Eigen::FFT<Real> engine;
  Eigen::MatrixXcd modes(m, m);
  ComplexVector in(m), out(m);
  for (int j = 0; j < m; ++j) {
    in = psi.values.col(j);
    engine.fwd(out, in);
    modes.col(j) = out;
  }
  for (int i = 0; i < m; ++i) {
    in = modes.row(i).transpose();
    engine.fwd(out, in);
    modes.row(i) = out.transpose();
  }
  const IntVector& wn = psi.grid->wavenumbers();
  Real w_sum = 0.0, p_sum = 0.0, p2_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Real w = std::norm(modes(i, j));
      const Real p = wn[i] + wn[j];
      w_sum += w;
      p_sum += w * p;
      p2_sum += w * p * p;
    }
  }
  const Real expectation = p_sum / w_sum;
  return {expectation, p2_sum / w_sum - expectation * expectation};
}

}  // namespace cci
