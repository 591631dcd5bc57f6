#pragma once

#include "cci/model.hpp"
#include "cci/ring_grid.hpp"

namespace cci {

/// The three shift-resolved kernels of the projected Hartree energy:
/// overlap S(r0) = <phi(r)|phi(r-r0)>, kinetic K(r0) = <phi(r)|T|phi(r-r0)>
/// and quartic W(r0) = <phi^2(r)|phi^2(r-r0)> (bra squared conjugated).
struct Profiles {
  Profile S;
  Profile K;
  Profile W;
};

/// Stable power of an overlap value: |s|^p * exp(i p arg s). Values with
/// |s| below 1e-250 contribute zero; for N ~ 1e4 the powers underflow
/// benignly away from r0 = 0.
Complex overlap_power(Complex s, Real p);

/// Kernels of a unit-norm orbital. Throws if |norm(phi) - 1| > 1e-8.
Profiles compute_profiles(const GridFunction& phi);

/// eps(N; r0) = S(r0) K(r0) + (u_tilde (N-1)/2) W(r0) at one shift node.
Complex energy_density(const Profiles& p, const ModelParams& m, int shift_index);

/// Projected energy per particle for unit-norm kernels:
/// eps(N) = sum_k S^(N-2) eps(N;k) / sum_k S^N. Throws
/// DegenerateOrbitalError when the denominator magnitude is below 1e-250.
Real energy_from_profiles(const Profiles& p, const ModelParams& m);

/// Same, from an arbitrary nonzero orbital (normalized internally; the
/// functional itself is scale- and translation-invariant).
Real energy_per_particle(const GridFunction& phi, const ModelParams& m);

/// mu(r0) = S^2(r0) N eps(N) - (N-1) eps(N-1; r0), where eps(N-1; r0)
/// substitutes N -> N-1 including the interaction prefactor.
Complex chemical_potential_density(const Profiles& p, const ModelParams& m,
                                   Real eps_n, int shift_index);

/// Gradient of the discretized eps(N) with respect to the real and
/// imaginary parts of each sample, packed as re + i*im. The descent
/// direction is the negative of the returned values. phi must be unit-norm.
GridFunction cci_gradient(const GridFunction& phi, const ModelParams& m);

struct CciResidual {
  GridFunction pointwise;
  Real norm;
};

/// Pointwise residual of the stationarity equation (left side minus right
/// side) and its quadrature norm, assembled by direct O(M^2) shift loops.
/// For N = 2 the right side uses the algebraically reduced weight
/// 2 S eps(2) - K so no inverse power of S appears.
CciResidual cci_residual(const GridFunction& phi, const ModelParams& m);

}  // namespace cci
