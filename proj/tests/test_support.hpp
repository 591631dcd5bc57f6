#pragma once

// Shared helpers for the unit suites: deterministic random grid functions
// and the O(M^2) reference kernels the FFT paths are checked against.

#include <complex>
#include <random>

#include "cci/ring_grid.hpp"

namespace cci::testing {

inline GridFunction random_function(const GridPtr& grid, unsigned seed,
                                    int mode_cutoff = -1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<Real> uni(-1.0, 1.0);
  const int m = grid->size();
  ComplexVector v = ComplexVector::Zero(m);
  if (mode_cutoff < 0) {
    for (int j = 0; j < m; ++j) v[j] = Complex(uni(rng), uni(rng));
  } else {
    // band-limited synthesis from random mode amplitudes
    for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
      const Complex a(uni(rng), uni(rng));
      for (int j = 0; j < m; ++j)
        v[j] += a * std::polar(1.0, n * grid->nodes()[j]);
    }
  }
  return {grid, v};
}

// Direct double-loop cross-correlation over all shift nodes.
inline Profile crosscorr_reference(const GridFunction& f, const GridFunction& g) {
  const int m = f.size();
  ComplexVector out(m);
  for (int k = 0; k < m; ++k) {
    const int s = f.grid->index_shift(k);
    Complex acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += std::conj(f.values[j]) * g.values[(j - s + m) % m];
    out[k] = acc * f.grid->spacing();
  }
  return {f.grid, out};
}

inline Real max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace cci::testing
