#include "cci/io/table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cci::io {

std::string format_real(Real x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::filesystem::path& path, const Csv& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_real(row[i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Csv read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Csv table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path.string());
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Real> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != table.header.size())
      throw std::runtime_error("ragged csv row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_orbital_csv(const std::filesystem::path& path, const GridFunction& phi) {
  Csv table;
  table.header = {"phi", "re", "im", "density"};
  table.rows.reserve(phi.size());
  for (int j = 0; j < phi.size(); ++j)
    table.rows.push_back({phi.grid->nodes()[j], phi.values[j].real(),
                          phi.values[j].imag(), std::norm(phi.values[j])});
  write_csv(path, table);
}

GridFunction read_orbital_csv(const std::filesystem::path& path) {
  const Csv table = read_csv(path);
  if (table.header != std::vector<std::string>{"phi", "re", "im", "density"})
    throw std::runtime_error("unexpected orbital csv header in " + path.string());
  const int m = static_cast<int>(table.rows.size());
  GridFunction phi{make_grid(m), ComplexVector(m)};
  for (int j = 0; j < m; ++j)
    phi.values[j] = Complex(table.rows[j][1], table.rows[j][2]);
  return phi;
}

void write_profiles_csv(const std::filesystem::path& path, const Profiles& profiles,
                        const ModelParams& params, Real eps_n) {
  Csv table;
  table.header = {"r0",   "S_re", "S_im", "K_re",           "K_im",
                  "W_re", "W_im", "eps_density_re", "mu_re"};
  const int m = profiles.S.size();
  table.rows.reserve(m);
  for (int k = 0; k < m; ++k) {
    const Complex eps_k = energy_density(profiles, params, k);
    const Complex mu_k = chemical_potential_density(profiles, params, eps_n, k);
    table.rows.push_back({profiles.S.grid->nodes()[k], profiles.S.values[k].real(),
                          profiles.S.values[k].imag(), profiles.K.values[k].real(),
                          profiles.K.values[k].imag(), profiles.W.values[k].real(),
                          profiles.W.values[k].imag(), eps_k.real(), mu_k.real()});
  }
  write_csv(path, table);
}

}  // namespace cci::io
