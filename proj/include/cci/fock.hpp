#pragma once

#include "cci/model.hpp"

namespace cci {

/// Ground-state energy of N <= 4 bosons in the zero-total-momentum Fock
/// sector of plane-wave modes |n| <= n_max, with contact matrix elements
/// u_tilde/(2 pi) under momentum conservation. Monotonically nonincreasing
/// in n_max; throws ConfigError when the sector dimension exceeds the cap.
Real fock_diagonalize(const ModelParams& params, int n_max);

/// Sector dimension for the same basis (exposed for sizing checks).
int fock_dimension(int n_particles, int n_max);

}  // namespace cci
