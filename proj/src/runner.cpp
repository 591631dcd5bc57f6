#include "cci/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "cci/errors.hpp"
#include "cci/exact_two_body.hpp"
#include "cci/fock.hpp"
#include "cci/functional.hpp"
#include "cci/gp.hpp"
#include "cci/io/table.hpp"
#include "cci/model.hpp"
#include "cci/solve.hpp"

namespace cci::io {

namespace {

namespace fs = std::filesystem;

CciSolveConfig solver_config(const RunConfig& c) {
  CciSolveConfig s = c.solver;
  s.grid_m = c.grid_m;
  s.rng_seed = c.rng_seed;
  return s;
}

std::string gamma_tag(Real gamma) {
  std::ostringstream os;
  os << gamma;
  return os.str();
}

void write_plot_script(const fs::path& path, const std::string& body) {
  std::ofstream out(path);
  out << "set datafile separator ','\n" << body;
}

struct ModeOutput {
  RunStatus status = RunStatus::success;
  std::map<std::string, Real> energies;
  std::map<std::string, Real> diagnostics;
  std::vector<std::string> artifacts;
};

ModeOutput run_cci_mode(const RunConfig& c, const fs::path& dir) {
  const ModelParams params = ModelParams::from_gamma(c.n_particles, c.gamma);
  const CciResult result = solve_cci(params, solver_config(c));
  write_orbital_csv(dir / "orbital.csv", result.orbital);
  const Profiles profiles = compute_profiles(result.orbital);
  write_profiles_csv(dir / "profiles.csv", profiles, params,
                     result.energy_per_particle);
  ModeOutput out;
  out.status = result.converged ? RunStatus::success : RunStatus::unconverged;
  out.energies["eps_cci"] = result.energy_per_particle;
  out.diagnostics["iterations"] = result.iterations;
  out.diagnostics["grad_norm"] = result.grad_norm;
  out.diagnostics["residual_norm"] = result.residual_norm;
  out.diagnostics["converged"] = result.converged ? 1.0 : 0.0;
  out.diagnostics["max_imag"] = result.max_imag;
  out.artifacts = {"orbital.csv", "profiles.csv"};
  return out;
}

ModeOutput run_gp_mode(const RunConfig& c, const fs::path& dir) {
  const ModelParams params = ModelParams::from_gamma(c.n_particles, c.gamma);
  const GpResult result = solve_gp(params, solver_config(c));
  write_orbital_csv(dir / "orbital.csv", result.orbital);
  const Profiles profiles = compute_profiles(result.orbital);
  const Real eps_cci_at_gp = energy_from_profiles(profiles, params);
  write_profiles_csv(dir / "profiles.csv", profiles, params, eps_cci_at_gp);
  ModeOutput out;
  out.status = result.converged ? RunStatus::success : RunStatus::unconverged;
  out.energies["eps_gp"] = result.energy_per_particle;
  out.energies["mu_gp"] = result.chemical_potential;
  out.energies["eps_cci_at_gp_orbital"] = eps_cci_at_gp;
  out.diagnostics["iterations"] = result.iterations;
  out.diagnostics["converged"] = result.converged ? 1.0 : 0.0;
  out.artifacts = {"orbital.csv", "profiles.csv"};
  return out;
}

ModeOutput run_exact2_mode(const RunConfig& c, const fs::path& dir) {
  const Real u0 = 2.0 * std::numbers::pi * c.gamma;  // N = 2
  const InteractionSpec interaction = InteractionSpec::contact(u0);
  const Sector sector = c.p0 == 0 ? Sector::even : Sector::general;
  const GridPtr grid = make_grid(c.grid_m);

  const RelativeSolution ground = solve_relative(interaction, sector, c.p0, c.n_max, 0);
  const auto levels = relative_spectrum(interaction, sector, c.p0, c.n_max, 8);
  Csv level_table;
  level_table.header = {"level", "energy_total", "energy_per_particle"};
  for (std::size_t i = 0; i < levels.size(); ++i)
    level_table.rows.push_back({static_cast<Real>(i), levels[i], levels[i] / 2});
  write_csv(dir / "relative_levels.csv", level_table);

  const OrbitalPair pair = build_orbitals(ground, grid);
  Csv pair_table;
  pair_table.header = {"phi", "phi1_re", "phi1_im", "phi2_re", "phi2_im"};
  for (int j = 0; j < grid->size(); ++j)
    pair_table.rows.push_back(
        {grid->nodes()[j], pair.phi1.values[j].real(), pair.phi1.values[j].imag(),
         pair.phi2.values[j].real(), pair.phi2.values[j].imag()});
  write_csv(dir / "orbital_pair.csv", pair_table);

  const TwoBodyWavefunction rebuilt =
      reconstruct(pair, c.p0, ground.statistics, grid);
  const TwoBodyWavefunction direct = direct_wavefunction(ground, grid);
  Complex align = (rebuilt.values.conjugate().cwiseProduct(direct.values)).sum();
  align = std::abs(align) > 0.0 ? align / std::abs(align) : Complex(1.0);
  const Real rec_error =
      (rebuilt.values * align - direct.values).cwiseAbs().maxCoeff();
  const MomentumStats stats = momentum_check(rebuilt);

  ModeOutput out;
  out.energies["e2_total"] = ground.energy;
  out.energies["eps_exact2"] = ground.energy / 2;
  if (c.gamma < 0.0 && c.p0 == 0)
    out.energies["e2_bound_continuum"] = contact_bound_state_energy(u0);
  out.diagnostics["reconstruction_error"] = rec_error;
  out.diagnostics["momentum_expectation"] = stats.expectation;
  out.diagnostics["momentum_variance"] = stats.variance;
  out.diagnostics["orbital_overlap"] = std::abs(inner(pair.phi1, pair.phi2));
  out.artifacts = {"relative_levels.csv", "orbital_pair.csv"};
  return out;
}

ModeOutput run_fock_mode(const RunConfig& c, const fs::path&) {
  const ModelParams params = ModelParams::from_gamma(c.n_particles, c.gamma);
  const Real e = fock_diagonalize(params, c.n_max);
  ModeOutput out;
  out.energies["e_fock"] = e;
  out.energies["eps_fock"] = e / c.n_particles;
  out.diagnostics["dimension"] = fock_dimension(c.n_particles, c.n_max);
  return out;
}

ModeOutput run_fig1_mode(const RunConfig& c, const fs::path& dir) {
  ModeOutput out;
  for (Real gamma : {-0.2, -1.0}) {
    RunConfig sub = c;
    sub.gamma = gamma;
    sub.n_particles = 2;
    const ModelParams params = ModelParams::from_gamma(2, gamma);
    const CciResult cci = solve_cci(params, solver_config(sub));
    const GpResult gp = solve_gp(params, solver_config(sub));
    const std::string tag = "g" + gamma_tag(gamma);
    write_orbital_csv(dir / ("cci_" + tag + ".csv"), cci.orbital);
    write_orbital_csv(dir / ("gp_" + tag + ".csv"), gp.orbital);
    write_profiles_csv(dir / ("cci_" + tag + "_profiles.csv"),
                       compute_profiles(cci.orbital), params,
                       cci.energy_per_particle);
    out.energies["eps_cci_" + tag] = cci.energy_per_particle;
    out.energies["eps_gp_" + tag] = gp.energy_per_particle;
    if (!cci.converged || !gp.converged) out.status = RunStatus::unconverged;
    out.artifacts.push_back("cci_" + tag + ".csv");
    out.artifacts.push_back("gp_" + tag + ".csv");
    out.artifacts.push_back("cci_" + tag + "_profiles.csv");
  }
  write_plot_script(
      dir / "fig1.gp",
      "set terminal pngcairo size 1000,420\n"
      "set output 'fig1.png'\n"
      "set multiplot layout 1,2\n"
      "set xlabel 'phi'\nset ylabel 'density'\n"
      "set title '|gamma| = 0.2'\n"
      "plot 'cci_g-0.2.csv' using 1:4 with lines title 'optimized orbital', \\\n"
      "     'gp_g-0.2.csv' using 1:4 with lines title 'mean field'\n"
      "set title '|gamma| = 1.0'\n"
      "plot 'cci_g-1.csv' using 1:4 with lines title 'optimized orbital', \\\n"
      "     'gp_g-1.csv' using 1:4 with lines title 'mean field'\n"
      "unset multiplot\n");
  out.artifacts.push_back("fig1.gp");
  return out;
}

ModeOutput run_fig2_mode(const RunConfig& c, const fs::path& dir) {
  ModeOutput out;
  std::string plot =
      "set terminal pngcairo size 800,500\n"
      "set output 'fig2.png'\n"
      "set xlabel 'phi'\nset ylabel 'density'\n"
      "set title 'optimized orbital at |gamma| = 0.2'\nplot";
  bool first = true;
  for (int n : {5, 25, 100, 1000, 10000}) {
    RunConfig sub = c;
    sub.gamma = -0.2;
    sub.n_particles = n;
    const ModelParams params = ModelParams::from_gamma(n, -0.2);
    const CciResult cci = solve_cci(params, solver_config(sub));
    const std::string name = "cci_n" + std::to_string(n) + ".csv";
    write_orbital_csv(dir / name, cci.orbital);
    out.energies["eps_cci_n" + std::to_string(n)] = cci.energy_per_particle;
    if (!cci.converged) out.status = RunStatus::unconverged;
    out.artifacts.push_back(name);
    plot += std::string(first ? " " : ", \\\n     ") + "'" + name +
            "' using 1:4 with lines title 'N = " + std::to_string(n) + "'";
    first = false;
  }
  plot += "\n";
  write_plot_script(dir / "fig2.gp", plot);
  out.artifacts.push_back("fig2.gp");
  return out;
}

RunOutcome execute_single(const RunConfig& config, const fs::path& dir);

ModeOutput run_sweep_mode(const RunConfig& c, const fs::path& dir,
                          std::vector<RunOutcome>* outcomes_out) {
  std::vector<Real> gammas = c.gamma_list.empty() ? std::vector<Real>{c.gamma}
                                                  : c.gamma_list;
  std::vector<int> ns = c.n_list.empty() ? std::vector<int>{c.n_particles}
                                         : c.n_list;
  struct Combo {
    Real gamma;
    int n;
    std::string name;
  };
  std::vector<Combo> combos;
  for (Real g : gammas)
    for (int n : ns)
      combos.push_back(
          {g, n, "combo_g" + gamma_tag(g) + "_n" + std::to_string(n)});

  std::vector<RunOutcome> outcomes(combos.size());
  auto work = [&](std::size_t i) {
    RunConfig sub = c;
    sub.mode = c.sweep_solver == SweepSolver::cci ? RunMode::cci : RunMode::gp;
    sub.gamma = combos[i].gamma;
    sub.n_particles = combos[i].n;
    sub.gamma_list.clear();
    sub.n_list.clear();
    sub.output_dir = (dir / combos[i].name).string();
    try {
      outcomes[i] = execute_single(sub, dir / combos[i].name);
    } catch (const std::exception&) {
      // a failing combination is recorded but does not abort the sweep
      outcomes[i].status = RunStatus::error;
      outcomes[i].run_dir = dir / combos[i].name;
      outcomes[i].manifest.mode = to_string(sub.mode);
      outcomes[i].manifest.status = "error";
    }
  };
  if (c.jobs <= 1) {
    for (std::size_t i = 0; i < combos.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int n_workers = std::min<int>(c.jobs, static_cast<int>(combos.size()));
    for (int t = 0; t < n_workers; ++t)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < combos.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& w : workers) w.join();
  }

  Csv summary;
  summary.header = {"gamma", "n_particles", "energy_per_particle", "converged",
                    "iterations"};
  ModeOutput out;
  const std::string energy_key =
      c.sweep_solver == SweepSolver::cci ? "eps_cci" : "eps_gp";
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const RunManifest& m = outcomes[i].manifest;
    const bool ok = outcomes[i].status != RunStatus::error;
    summary.rows.push_back(
        {combos[i].gamma, static_cast<Real>(combos[i].n),
         ok && m.energies.count(energy_key) ? m.energies.at(energy_key) : 0.0,
         ok ? m.diagnostics.at("converged") : 0.0,
         ok ? m.diagnostics.at("iterations") : 0.0});
    out.artifacts.push_back(combos[i].name + "/manifest.json");
    if (outcomes[i].status == RunStatus::error)
      out.status = RunStatus::error;
    else if (outcomes[i].status == RunStatus::unconverged &&
             out.status == RunStatus::success)
      out.status = RunStatus::unconverged;
  }
  write_csv(dir / "summary.csv", summary);
  out.artifacts.insert(out.artifacts.begin(), "summary.csv");
  if (outcomes_out) *outcomes_out = std::move(outcomes);
  return out;
}

RunOutcome execute_single(const RunConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome outcome;
  outcome.run_dir = dir;
  outcome.manifest.mode = to_string(config.mode);
  outcome.manifest.config = config_echo(config);
  ModeOutput out;
  try {
    switch (config.mode) {
      case RunMode::cci: out = run_cci_mode(config, dir); break;
      case RunMode::gp: out = run_gp_mode(config, dir); break;
      case RunMode::exact2: out = run_exact2_mode(config, dir); break;
      case RunMode::fock: out = run_fock_mode(config, dir); break;
      case RunMode::fig1: out = run_fig1_mode(config, dir); break;
      case RunMode::fig2: out = run_fig2_mode(config, dir); break;
      case RunMode::sweep: out = run_sweep_mode(config, dir, nullptr); break;
    }
  } catch (const std::exception& e) {
    outcome.status = RunStatus::error;
    outcome.manifest.status = "error";
    outcome.manifest.diagnostics["error"] = 1.0;
    const auto t1 = std::chrono::steady_clock::now();
    outcome.manifest.wall_time_ms =
        std::chrono::duration<Real, std::milli>(t1 - t0).count();
    write_manifest_atomic(dir / "manifest.json", outcome.manifest);
    throw;
  }
  outcome.status = out.status;
  outcome.manifest.status =
      out.status == RunStatus::success
          ? "success"
          : (out.status == RunStatus::unconverged ? "unconverged" : "error");
  outcome.manifest.energies = std::move(out.energies);
  outcome.manifest.diagnostics = std::move(out.diagnostics);
  outcome.manifest.artifacts = std::move(out.artifacts);
  const auto t1 = std::chrono::steady_clock::now();
  outcome.manifest.wall_time_ms =
      std::chrono::duration<Real, std::milli>(t1 - t0).count();
  write_manifest_atomic(dir / "manifest.json", outcome.manifest);
  return outcome;
}

}  // namespace

std::filesystem::path resolve_output_dir(const RunConfig& config) {
  fs::path dir = config.output_dir.empty()
                     ? fs::path(to_string(config.mode) + "-run")
                     : fs::path(config.output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("CCI_RING_OUTPUT_ROOT"))
      dir = fs::path(root) / dir;
  }
  return dir;
}

RunOutcome run(const RunConfig& config) {
  config.validate();
  return execute_single(config, resolve_output_dir(config));
}

std::vector<RunOutcome> run_sweep_combinations(const RunConfig& config) {
  config.validate();
  if (config.mode != RunMode::sweep)
    throw ConfigError("run_sweep_combinations requires sweep mode");
  const fs::path dir = resolve_output_dir(config);
  fs::create_directories(dir);
  std::vector<RunOutcome> outcomes;
  RunConfig c = config;
  run_sweep_mode(c, dir, &outcomes);
  return outcomes;
}

}  // namespace cci::io
