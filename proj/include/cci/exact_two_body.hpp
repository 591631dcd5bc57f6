#pragma once

#include <Eigen/Core>

#include <vector>

#include "cci/ring_grid.hpp"

namespace cci {

/// Pairwise interaction U(theta) on the relative angle, real and even.
/// The contact kind carries the exact delta matrix elements, i.e. the
/// cosine series u_0 = U0/(2 pi), u_m = U0/pi extended to whatever mode the
/// basis cutoff requires; convergence in the cutoff is reported by the
/// callers, not hidden.
struct InteractionSpec {
  enum class Kind { contact, fourier };

  Kind kind = Kind::contact;
  Real strength = 0.0;          // contact U0
  std::vector<Real> fourier_u;  // u_m, m = 0..m_max

  static InteractionSpec contact(Real u0) {
    return {Kind::contact, u0, {}};
  }
  static InteractionSpec fourier(std::vector<Real> u) {
    return {Kind::fourier, 0.0, std::move(u)};
  }

  /// Cosine coefficient u_m of U(theta) = u_0 + sum_m u_m cos(m theta).
  Real mode_coefficient(int m) const;
};

/// Relative-angle parity sector at P0 = 0 (even = bosons/singlet,
/// odd = triplet) or the general plane-wave sector used for P0 != 0.
enum class Sector { even, odd, general };

enum class Statistics { symmetric, antisymmetric };

/// Eigenpair of the two-particle problem expressed through the expansion
/// coefficients A_k of the defining cosine/sine/plane-wave series, scaled
/// so the reconstructed wavefunction has unit norm.
struct RelativeSolution {
  Sector sector = Sector::even;
  Statistics statistics = Statistics::symmetric;
  int p0 = 0;
  int n_max = 0;
  int level = 0;
  // even/odd: index n = 0..n_max (odd leaves index 0 at zero);
  // general: index offset k_min()..k_max() covering the swap-closed window.
  ComplexVector coefficients;
  Real energy = 0.0;  // total two-particle energy

  int k_min() const { return sector == Sector::general ? general_k_min(p0, n_max) : 0; }
  int k_max() const { return sector == Sector::general ? general_k_max(p0, n_max) : n_max; }
  Complex coefficient(int k) const { return coefficients[k - k_min()]; }

  static int general_k_min(int p0, int n_max) { return p0 >= 0 ? -n_max : -n_max + p0; }
  static int general_k_max(int p0, int n_max) { return p0 >= 0 ? n_max + p0 : n_max; }
};

/// Dense diagonalization of the relative Hamiltonian -2 d^2/dtheta^2 + U
/// (plus the center-of-mass kinetic offset in the general sector) in the
/// normalized trigonometric or plane-wave basis. level indexes the
/// ascending spectrum of the requested sector.
RelativeSolution solve_relative(const InteractionSpec& u, Sector sector, int p0,
                                int n_max, int level);

/// First `count` eigenvalues of the sector, ascending.
std::vector<Real> relative_spectrum(const InteractionSpec& u, Sector sector,
                                    int p0, int n_max, int count);

/// Ground-state energy of the attractive contact pair from the bound-state
/// matching condition kappa*tanh(pi*kappa) = |U0|/4, E = -2 kappa^2.
Real contact_bound_state_energy(Real u0);

/// Ground-state root of the cutoff secular equation
/// 1 = U0 [ (1/2pi)/E + sum_{n=1..n_max} (1/pi)/(E - 2 n^2) ], the rank-one
/// reduction of the truncated even-sector matrix.
Real contact_secular_ground_energy(Real u0, int n_max);

/// The pair of symmetry-broken orbitals built from the principal square
/// roots of the coefficients; complex whenever some A_k leaves the
/// nonnegative real axis.
struct OrbitalPair {
  GridFunction phi1;
  GridFunction phi2;
};

OrbitalPair build_orbitals(const RelativeSolution& solution, const GridPtr& grid);

/// Two-particle wavefunction sampled on the grid; values(i, j) is
/// Psi(phi_i, phi_j).
struct TwoBodyWavefunction {
  GridPtr grid;
  Eigen::MatrixXcd values;
  Statistics statistics = Statistics::symmetric;
  int p0 = 0;
};

/// Assembles Psi as the discrete shift sum over all M nodes: the Hartree
/// product integral (symmetric, P0 = 0), the determinant integral
/// (antisymmetric, P0 = 0), or the e^{+i P0 r0}-weighted pair sum
/// (P0 != 0). The result is normalized.
TwoBodyWavefunction reconstruct(const OrbitalPair& pair, int p0,
                                Statistics statistics, const GridPtr& grid);

/// Builds Psi directly from the stored coefficient series (normalized);
/// the comparison target for the reconstruction identity.
TwoBodyWavefunction direct_wavefunction(const RelativeSolution& solution,
                                        const GridPtr& grid);

struct MomentumStats {
  Real expectation = 0.0;
  Real variance = 0.0;
};

/// Expectation and variance of the total momentum -i(d/dphi1 + d/dphi2),
/// applied spectrally.
MomentumStats momentum_check(const TwoBodyWavefunction& psi);

}  // namespace cci
