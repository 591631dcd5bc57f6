#include "cci/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cci/errors.hpp"

namespace cci::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Real parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const Real x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t x = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid seed for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + value);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void assign(RunConfig& c, const std::string& section, const std::string& key,
            const std::string& value) {
  const std::string full = section + "." + key;
  if (section == "run") {
    if (key == "mode")
      c.mode = parse_mode(value);
    else if (key == "output_dir")
      c.output_dir = value;
    else if (key == "rng_seed")
      c.rng_seed = parse_u64(full, value);
    else
      throw ConfigError("unknown key '" + full + "'");
  } else if (section == "model") {
    if (key == "gamma")
      c.gamma = parse_real(full, value);
    else if (key == "n_particles")
      c.n_particles = static_cast<int>(parse_int(full, value));
    else if (key == "grid_m")
      c.grid_m = static_cast<int>(parse_int(full, value));
    else if (key == "n_max")
      c.n_max = static_cast<int>(parse_int(full, value));
    else if (key == "p0")
      c.p0 = static_cast<int>(parse_int(full, value));
    else
      throw ConfigError("unknown key '" + full + "'");
  } else if (section == "solver") {
    if (key == "max_iter")
      c.solver.max_iter = static_cast<int>(parse_int(full, value));
    else if (key == "tol_grad")
      c.solver.tol_grad = parse_real(full, value);
    else if (key == "init") {
      if (value == "bump")
        c.solver.init = InitKind::bump;
      else if (value == "uniform_plus_noise")
        c.solver.init = InitKind::uniform_plus_noise;
      else
        throw ConfigError("unknown init kind: " + value);
    } else if (key == "bump_kappa")
      c.solver.bump_kappa = parse_real(full, value);
    else if (key == "noise_amplitude")
      c.solver.noise_amplitude = parse_real(full, value);
    else if (key == "recenter")
      c.solver.recenter = parse_bool(full, value);
    else if (key == "step_initial")
      c.solver.step_initial = parse_real(full, value);
    else if (key == "step_shrink")
      c.solver.step_shrink = parse_real(full, value);
    else if (key == "armijo_c")
      c.solver.armijo_c = parse_real(full, value);
    else
      throw ConfigError("unknown key '" + full + "'");
  } else if (section == "sweep") {
    if (key == "solver") {
      if (value == "cci")
        c.sweep_solver = SweepSolver::cci;
      else if (value == "gp")
        c.sweep_solver = SweepSolver::gp;
      else
        throw ConfigError("unknown sweep solver: " + value);
    } else if (key == "gamma_list") {
      c.gamma_list.clear();
      for (const auto& item : split_list(value))
        c.gamma_list.push_back(parse_real(full, item));
    } else if (key == "n_list") {
      c.n_list.clear();
      for (const auto& item : split_list(value))
        c.n_list.push_back(static_cast<int>(parse_int(full, item)));
    } else if (key == "jobs")
      c.jobs = static_cast<int>(parse_int(full, value));
    else
      throw ConfigError("unknown key '" + full + "'");
  } else {
    throw ConfigError("unknown section '" + section + "'");
  }
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::cci: return "cci";
    case RunMode::gp: return "gp";
    case RunMode::exact2: return "exact2";
    case RunMode::fock: return "fock";
    case RunMode::sweep: return "sweep";
    case RunMode::fig1: return "fig1";
    case RunMode::fig2: return "fig2";
  }
  return "?";
}

RunMode parse_mode(const std::string& text) {
  for (RunMode m : {RunMode::cci, RunMode::gp, RunMode::exact2, RunMode::fock,
                    RunMode::sweep, RunMode::fig1, RunMode::fig2})
    if (text == to_string(m)) return m;
  throw ConfigError("unknown mode '" + text + "'");
}

void RunConfig::validate() const {
  if (n_particles < 2) throw ConfigError("model.n_particles must be >= 2");
  if (grid_m < 8 || grid_m % 2 != 0)
    throw ConfigError("model.grid_m must be even and >= 8");
  if (n_max < 8) throw ConfigError("model.n_max must be >= 8");
  if (jobs < 1) throw ConfigError("sweep.jobs must be >= 1");
  solver.validate();
  if (mode == RunMode::sweep && gamma_list.empty() && n_list.empty())
    throw ConfigError("sweep mode needs a nonempty gamma_list or n_list");
  for (int n : n_list)
    if (n < 2) throw ConfigError("sweep.n_list entries must be >= 2");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " +
                          std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "model" && section != "solver" &&
          section != "sweep")
        throw ConfigError("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(line_no));
    if (section.empty())
      throw ConfigError("key outside any section at line " + std::to_string(line_no));
    assign(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like section.key=value: " + assignment);
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  const auto dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override key must be section-qualified: " + path);
  assign(config, path.substr(0, dot), path.substr(dot + 1), value);
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  auto real_str = [](Real x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("run.mode", to_string(c.mode));
  kv.emplace_back("run.output_dir", c.output_dir);
  kv.emplace_back("run.rng_seed", std::to_string(c.rng_seed));
  kv.emplace_back("model.gamma", real_str(c.gamma));
  kv.emplace_back("model.n_particles", std::to_string(c.n_particles));
  kv.emplace_back("model.grid_m", std::to_string(c.grid_m));
  kv.emplace_back("model.n_max", std::to_string(c.n_max));
  kv.emplace_back("model.p0", std::to_string(c.p0));
  kv.emplace_back("solver.max_iter", std::to_string(c.solver.max_iter));
  kv.emplace_back("solver.tol_grad", real_str(c.solver.tol_grad));
  kv.emplace_back("solver.init", c.solver.init == InitKind::bump
                                     ? "bump"
                                     : "uniform_plus_noise");
  kv.emplace_back("solver.bump_kappa", real_str(c.solver.bump_kappa));
  kv.emplace_back("solver.noise_amplitude", real_str(c.solver.noise_amplitude));
  kv.emplace_back("solver.recenter", c.solver.recenter ? "true" : "false");
  kv.emplace_back("solver.step_initial", real_str(c.solver.step_initial));
  kv.emplace_back("solver.step_shrink", real_str(c.solver.step_shrink));
  kv.emplace_back("solver.armijo_c", real_str(c.solver.armijo_c));
  if (c.mode == RunMode::sweep) {
    kv.emplace_back("sweep.solver",
                    c.sweep_solver == SweepSolver::cci ? "cci" : "gp");
    std::string gl, nl;
    for (Real g : c.gamma_list) gl += (gl.empty() ? "" : ", ") + real_str(g);
    for (int n : c.n_list) nl += (nl.empty() ? "" : ", ") + std::to_string(n);
    kv.emplace_back("sweep.gamma_list", gl);
    kv.emplace_back("sweep.n_list", nl);
    kv.emplace_back("sweep.jobs", std::to_string(c.jobs));
  }
  return kv;
}

}  // namespace cci::io
