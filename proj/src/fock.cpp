#include "cci/fock.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "cci/errors.hpp"

namespace cci {

namespace {

constexpr int kDimensionCap = 6000;

// Zero-momentum occupation basis, each state a sorted tuple of N modes.
std::vector<std::vector<int>> enumerate_states(int n, int n_max) {
  std::vector<std::vector<int>> states;
  std::vector<int> tuple(n);
  // depth-first over nondecreasing tuples with total momentum zero
  auto recurse = [&](auto&& self, int pos, int min_mode, int sum) -> void {
    if (pos == n) {
      if (sum == 0) states.push_back(tuple);
      return;
    }
    const int remaining = n - pos - 1;
    for (int k = min_mode; k <= n_max; ++k) {
      // remaining modes are >= k and <= n_max; prune unreachable sums
      if (sum + k + remaining * n_max < 0) continue;
      if (sum + k + remaining * k > 0) break;
      tuple[pos] = k;
      self(self, pos + 1, k, sum + k);
    }
  };
  recurse(recurse, 0, -n_max, 0);
  return states;
}

std::map<int, int> occupations(const std::vector<int>& tuple) {
  std::map<int, int> occ;
  for (int k : tuple) ++occ[k];
  return occ;
}

}  // namespace

int fock_dimension(int n_particles, int n_max) {
  return static_cast<int>(enumerate_states(n_particles, n_max).size());
}

Real fock_diagonalize(const ModelParams& params, int n_max) {
  const int n = params.n_particles;
  if (n < 2 || n > 4)
    throw ConfigError("Fock diagonalization supports 2 <= N <= 4");
  if (n_max < 1) throw ConfigError("Fock mode cutoff must be >= 1");

  const auto states = enumerate_states(n, n_max);
  const int dim = static_cast<int>(states.size());
  if (dim > kDimensionCap)
    throw ConfigError("Fock basis too large: " + std::to_string(dim) +
                      " states (cap " + std::to_string(kDimensionCap) + ")");

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < dim; ++i) index[states[i]] = i;

  const Real coupling = params.u_tilde / (4.0 * std::numbers::pi);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (int col = 0; col < dim; ++col) {
    const auto occ = occupations(states[col]);
    Real kinetic = 0.0;
    for (int k : states[col]) kinetic += static_cast<Real>(k) * k;
    h(col, col) += kinetic;

    // (u/4pi) sum_{k+l = m+p} a+_k a+_l a_p a_m
    for (const auto& [m, om] : occ) {
      for (const auto& [p, op] : occ) {
        const int op_eff = op - (m == p ? 1 : 0);
        if (om < 1 || op_eff < 1) continue;
        const Real amp_rm = std::sqrt(static_cast<Real>(om) * op_eff);
        auto reduced = occ;
        if (--reduced[m] == 0) reduced.erase(m);
        if (--reduced[p] == 0) reduced.erase(p);
        for (int k = -n_max; k <= n_max; ++k) {
          const int l = m + p - k;
          if (l < -n_max || l > n_max) continue;
          auto raised = reduced;
          const int ol = raised[l]++;
          const int ok = raised[k]++;
          const Real amp_add =
              std::sqrt(static_cast<Real>(ol + 1) * (ok + 1));
          std::vector<int> tuple;
          tuple.reserve(n);
          for (const auto& [mode, c] : raised)
            tuple.insert(tuple.end(), c, mode);
          h(index.at(tuple), col) += coupling * amp_rm * amp_add;
        }
      }
    }
  }

  const Real dev = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::logic_error("Fock Hamiltonian assembly is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

}  // namespace cci
