#include "thermoflow/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace thermoflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ValidationError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ValidationError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ValidationError(key + ": expected true/false, got '" + v + "'");
}

struct RawModel {
  std::string kind = "power_law";
  double r = 2.0, K = 1.0;
  double alpha = 1.0, alpha_amp = 0.0, beta = 1.0, beta_amp = 0.0, gamma = 1.0, gamma_amp = 0.0;
  double tau_y = 0.5, eps_reg = 0.1;
};

}  // namespace

Config parse_config(std::istream& in, const std::string& source) {
  Config cfg;
  RawModel m;
  std::string conductivity_kind = "constant";
  double c1 = 1.0, c2 = 1.0, cap = 10.0;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& target) -> Setter {
    return [&target](const std::string& k, const std::string& v) { target = to_double(k, v); };
  };
  auto text = [](std::string& target) -> Setter {
    return [&target](const std::string&, const std::string& v) { target = v; };
  };
  auto flag = [](bool& target) -> Setter {
    return [&target](const std::string& k, const std::string& v) { target = to_bool(k, v); };
  };
  RunConfig& run = cfg.run;
  const std::map<std::string, Setter> setters = {
      {"mesh.level", [&](const std::string& k, const std::string& v) { run.mesh_level = static_cast<int>(to_int(k, v)); }},
      {"mesh.file", text(run.mesh_file)},
      {"model.kind", text(m.kind)},
      {"model.r", real(m.r)},
      {"model.K", real(m.K)},
      {"model.alpha", real(m.alpha)},
      {"model.alpha_amp", real(m.alpha_amp)},
      {"model.beta", real(m.beta)},
      {"model.beta_amp", real(m.beta_amp)},
      {"model.gamma", real(m.gamma)},
      {"model.gamma_amp", real(m.gamma_amp)},
      {"model.tau_y", real(m.tau_y)},
      {"model.eps_reg", real(m.eps_reg)},
      {"conductivity.kind", text(conductivity_kind)},
      {"conductivity.c1", real(c1)},
      {"conductivity.c2", real(c2)},
      {"conductivity.cap", real(cap)},
      {"time.T", real(run.T)},
      {"time.tau", real(run.tau)},
      {"penalty.k", real(run.penalty_k)},
      {"penalty.r_star", real(run.r_star)},
      {"solver.picard_tol", real(run.picard_tol)},
      {"solver.picard_max", [&](const std::string& k, const std::string& v) { run.picard_max = static_cast<int>(to_int(k, v)); }},
      {"solver.damping", real(run.damping)},
      {"solver.mass_lumping", flag(run.mass_lumping)},
      {"scenario.name", text(run.scenario)},
      {"output.dir", text(cfg.output_dir)},
      {"output.csv", flag(cfg.write_csv)},
      {"output.vtk", flag(cfg.write_vtk)},
      {"check.samples", [&](const std::string& k, const std::string& v) { cfg.check_samples = static_cast<int>(to_int(k, v)); }},
      {"check.seed", [&](const std::string& k, const std::string& v) {
         const long long s = to_int(k, v);
         if (s < 0) throw ValidationError(k + " must be non-negative");
         cfg.check_seed = static_cast<std::uint64_t>(s);
       }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ValidationError(where + ": expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ValidationError(where + ": expected 'section.key = value'");
    const auto it = setters.find(key);
    if (it == setters.end()) throw ValidationError(where + ": unknown key '" + key + "'");
    it->second(key, value);
  }

  switch (parse_model_kind(m.kind)) {
    case ModelKind::PowerLaw:
      run.model = ConstitutiveModel::power_law(m.r, m.K);
      break;
    case ModelKind::CarreauYasuda:
      run.model = ConstitutiveModel::carreau_yasuda(m.r, {m.alpha, m.alpha_amp}, {m.beta, m.beta_amp},
                                                    {m.gamma, m.gamma_amp});
      break;
    case ModelKind::HbRegularized:
      run.model = ConstitutiveModel::hb_regularized(m.r, m.K, m.tau_y, m.eps_reg);
      break;
  }
  run.conductivity.kind = parse_conductivity_kind(conductivity_kind);
  run.conductivity.c1 = c1;
  run.conductivity.c2 = run.conductivity.kind == ConductivityKind::Constant ? 0.0 : c2;
  run.conductivity.cap = cap;
  if (cfg.check_samples < 1) throw ValidationError("check.samples must be at least 1");
  run.validate();
  const auto names = scenario_names();
  if (std::find(names.begin(), names.end(), run.scenario) == names.end()) {
    throw ValidationError("scenario.name: unknown scenario '" + run.scenario + "'");
  }
  return cfg;
}

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace thermoflow
