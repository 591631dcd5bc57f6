#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cci/functional.hpp"
#include "cci/model.hpp"
#include "cci/ring_grid.hpp"

namespace cci::io {

/// Doubles are serialized with 17 significant digits so every emitted file
/// re-parses to the exact in-memory value.
std::string format_real(Real x);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<Real>> rows;
};

void write_csv(const std::filesystem::path& path, const Csv& table);
Csv read_csv(const std::filesystem::path& path);

/// Columns: phi, re, im, density.
void write_orbital_csv(const std::filesystem::path& path, const GridFunction& phi);
GridFunction read_orbital_csv(const std::filesystem::path& path);

/// Columns: r0, S_re, S_im, K_re, K_im, W_re, W_im, eps_density_re, mu_re.
void write_profiles_csv(const std::filesystem::path& path, const Profiles& profiles,
                        const ModelParams& params, Real eps_n);

}  // namespace cci::io
