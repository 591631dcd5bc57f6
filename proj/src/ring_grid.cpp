#include "cci/ring_grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cci/errors.hpp"

namespace cci {

namespace {

constexpr Real kTwoPi = 2.0 * std::numbers::pi;

Eigen::FFT<Real>& fft_engine() {
  // kissfft backend; plans are cached per length inside the engine.
  thread_local Eigen::FFT<Real> engine;
  return engine;
}

ComplexVector fft(const ComplexVector& x) {
  ComplexVector out(x.size());
  fft_engine().fwd(out, x);
  return out;
}

ComplexVector ifft(const ComplexVector& x) {
  ComplexVector out(x.size());
  fft_engine().inv(out, x);
  return out;
}

void require_same_grid(const GridFunction& f, const GridFunction& g,
                       const char* op) {
  if (!f.grid || !g.grid || f.grid->size() != g.grid->size())
    throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

}  // namespace

RingGrid::RingGrid(int m) : m_(m), delta_(kTwoPi / m), nodes_(m), wavenumbers_(m) {
  for (int j = 0; j < m; ++j) nodes_[j] = -std::numbers::pi + j * delta_;
  for (int j = 0; j < m; ++j) wavenumbers_[j] = (j < m / 2) ? j : j - m;
}

GridPtr make_grid(int m) {
  if (m < 8 || m % 2 != 0)
    throw ConfigError("grid size must be even and >= 8, got " + std::to_string(m));
  return GridPtr(new RingGrid(m));
}

Complex inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "inner");
  return f.grid->spacing() * f.values.dot(g.values);
}

Real norm(const GridFunction& f) {
  return std::sqrt(f.grid->spacing()) * f.values.norm();
}

GridFunction normalized(const GridFunction& f) {
  const Real n = norm(f);
  if (!(n > 0.0))
    throw std::invalid_argument("normalized: zero-norm grid function");
  return {f.grid, f.values / n};
}

GridFunction apply_kinetic(const GridFunction& f) {
  ComplexVector modes = fft(f.values);
  const IntVector& wn = f.grid->wavenumbers();
  for (int i = 0; i < modes.size(); ++i)
    modes[i] *= static_cast<Real>(wn[i]) * static_cast<Real>(wn[i]);
  return {f.grid, ifft(modes)};
}

GridFunction apply_mode_scale(const GridFunction& f, const RealVector& factors) {
  if (factors.size() != f.values.size())
    throw std::invalid_argument("apply_mode_scale: factor length mismatch");
  ComplexVector modes = fft(f.values);
  for (int i = 0; i < modes.size(); ++i) modes[i] *= factors[i];
  return {f.grid, ifft(modes)};
}

GridFunction shift(const GridFunction& f, long j) {
  const int m = f.size();
  const long s = ((j % m) + m) % m;
  ComplexVector out(m);
  for (int i = 0; i < m; ++i) out[i] = f.values[(i - s + m) % m];
  return {f.grid, out};
}

Profile crosscorr(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "crosscorr");
  const int m = f.size();
  // c_s = sum_j conj(f_j) g_{j-s} equals DFT(conj(DFT f) .* DFT g)/M; the
  // profile index k corresponds to the shift node r0 = nodes[k], i.e. the
  // raw index shift s = (k + M/2) mod M, which is an fftshift of c.
  const ComplexVector d =
      fft(f.values).conjugate().cwiseProduct(fft(g.values));
  const ComplexVector c = fft(d);
  ComplexVector out(m);
  const Real scale = f.grid->spacing() / m;
  for (int k = 0; k < m; ++k) out[k] = scale * c[(k + m / 2) % m];
  return {f.grid, out};
}

GridFunction convolve_shifts(const Profile& weights, const GridFunction& f) {
  if (!weights.grid || weights.grid->size() != f.grid->size())
    throw std::invalid_argument("convolve_shifts: grid mismatch");
  const int m = f.size();
  ComplexVector w(m);  // reindex from shift nodes to raw index shifts
  for (int s = 0; s < m; ++s) w[s] = weights.values[(s + m / 2) % m];
  const ComplexVector prod = fft(w).cwiseProduct(fft(f.values));
  return {f.grid, ifft(prod)};
}

GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "multiply");
  return {f.grid, f.values.cwiseProduct(g.values)};
}

}  // namespace cci
