#pragma once

#include <Eigen/Core>

#include <complex>
#include <memory>

namespace cci {

using Real = double;
using Complex = std::complex<Real>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using IntVector = Eigen::VectorXi;

class RingGrid;
using GridPtr = std::shared_ptr<const RingGrid>;

/// Uniform periodic grid on the ring angle phi in [-pi, pi).
///
/// Nodes are phi_j = -pi + j*delta with delta = 2*pi/M, and the integer
/// wavenumbers follow the standard FFT ordering
/// {0, 1, ..., M/2-1, -M/2, ..., -1}. Shift values r0 are sampled on the
/// same nodes, so every shift integral is an exact circular sum.
class RingGrid {
 public:
  int size() const { return m_; }
  Real spacing() const { return delta_; }
  const RealVector& nodes() const { return nodes_; }
  const IntVector& wavenumbers() const { return wavenumbers_; }

  /// Index of the node at phi = 0 (M/2 for even M).
  int center_index() const { return m_ / 2; }

  /// Index shift realizing a translation by the shift node r0 = nodes()[k]:
  /// phi(. - r0) samples as values[(j - shift) mod M].
  int index_shift(int shift_node) const { return (shift_node + m_ / 2) % m_; }

  friend GridPtr make_grid(int m);

 private:
  explicit RingGrid(int m);

  int m_;
  Real delta_;
  RealVector nodes_;
  IntVector wavenumbers_;
};

/// Builds the grid. m must be even and at least 8.
GridPtr make_grid(int m);

/// Complex-valued function sampled at the grid nodes.
struct GridFunction {
  GridPtr grid;
  ComplexVector values;

  int size() const { return static_cast<int>(values.size()); }
};

/// Shift-resolved kernel h(r0) sampled at the shift nodes r0 = nodes()[k].
/// The zero-shift value sits at index grid->center_index().
struct Profile {
  GridPtr grid;
  ComplexVector values;

  int size() const { return static_cast<int>(values.size()); }
  Complex at_zero_shift() const { return values[grid->center_index()]; }
};

/// Quadrature inner product sum_j conj(f_j) g_j * delta, conjugating f.
Complex inner(const GridFunction& f, const GridFunction& g);

Real norm(const GridFunction& f);

GridFunction normalized(const GridFunction& f);

/// Spectral second derivative -d^2/dphi^2 (mode n multiplied by n^2).
GridFunction apply_kinetic(const GridFunction& f);

/// Multiplies each Fourier mode by a real factor, one per wavenumber slot.
GridFunction apply_mode_scale(const GridFunction& f, const RealVector& factors);

/// Circular index shift: result sample at node i is f at node i - j (mod M).
GridFunction shift(const GridFunction& f, long j);

/// Cross-correlation h(r0) = sum_j conj(f_j) g(phi_j - r0) * delta over all
/// shift nodes r0, computed via FFT in O(M log M).
Profile crosscorr(const GridFunction& f, const GridFunction& g);

/// Weighted shift sum sum_k w(r0_k) f(. - r0_k), the discrete form of
/// integral dr0 w(r0) f(. - r0) without the quadrature delta.
GridFunction convolve_shifts(const Profile& weights, const GridFunction& f);

/// Pointwise product, same grid required.
GridFunction multiply(const GridFunction& f, const GridFunction& g);

}  // namespace cci
