#include "cci/io/manifest.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cci/io/table.hpp"

namespace cci::io {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string RunManifest::to_json() const {
  ordered_json j;
  j["format_version"] = format_version;
  j["mode"] = mode;
  j["status"] = status;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  // Numbers are emitted as full-precision strings so manifests are
  // byte-reproducible and re-parse exactly.
  ordered_json en = ordered_json::object();
  for (const auto& [k, v] : energies) en[k] = format_real(v);
  j["energies"] = en;
  ordered_json di = ordered_json::object();
  for (const auto& [k, v] : diagnostics) di[k] = format_real(v);
  j["diagnostics"] = di;
  j["artifacts"] = artifacts;
  j["wall_time_ms"] = format_real(wall_time_ms);
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunManifest m;
  m.format_version = j.at("format_version").get<std::string>();
  m.mode = j.at("mode").get<std::string>();
  m.status = j.at("status").get<std::string>();
  for (const auto& [k, v] : j.at("config").items())
    m.config.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("energies").items())
    m.energies[k] = std::stod(v.get<std::string>());
  for (const auto& [k, v] : j.at("diagnostics").items())
    m.diagnostics[k] = std::stod(v.get<std::string>());
  for (const auto& v : j.at("artifacts")) m.artifacts.push_back(v.get<std::string>());
  m.wall_time_ms = std::stod(j.at("wall_time_ms").get<std::string>());
  return m;
}

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << m.to_json();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return RunManifest::from_json(buffer.str());
}

}  // namespace cci::io
