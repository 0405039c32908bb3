#include "jacobs/config.hpp"

#include "jacobs/errors.hpp"
#include "jacobs/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace jacobs {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  errno = 0;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(d))
    throw UsageError("config " + key + ": '" + v + "' is not a finite number");
  return d;
}

long long to_integer(const std::string& key, const std::string& v) {
  double d = to_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 9e15) throw UsageError("config " + key + ": '" + v + "' is not an integer");
  return static_cast<long long>(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw UsageError("config " + key + ": '" + v + "' is not a boolean");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(eps_min > 0) || !(tol > 0) || !(solver_tol > 0))
    throw UsageError("tolerances and eps_min must be positive");
  if (solver_tol > 1e-4) throw UsageError("solver_tol must be <= 1e-4");
  if (max_evals < 1'000'000) throw UsageError("evaluation budget must be >= 1e6");
  if (!(T0 >= 2)) throw UsageError("T0 must be >= 2");
  if (!(rs_threshold > 0)) throw UsageError("rs_threshold must be positive");
  if (cache_path.empty()) throw UsageError("cache path must not be empty");
  if (out_dir.empty()) throw UsageError("output directory must not be empty");
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "eps_min") eps_min = to_double(key, v);
  else if (key == "tol") tol = to_double(key, v);
  else if (key == "solver_tol") solver_tol = to_double(key, v);
  else if (key == "T0") T0 = to_double(key, v);
  else if (key == "mode") {
    if (v == "exact") mode = ladder::Mode::exact;
    else if (v == "asymptotic") mode = ladder::Mode::asymptotic;
    else throw UsageError("config mode must be exact or asymptotic");
  } else if (key == "max_evals") max_evals = to_integer(key, v);
  else if (key == "rs_threshold") rs_threshold = to_double(key, v);
  else if (key == "fast_path") fast_path = to_bool(key, v);
  else if (key == "cache") cache_path = v;
  else if (key == "out") out_dir = v;
  else if (key == "format") {
    if (v == "csv") format = OutputFormat::csv;
    else if (v == "json") format = OutputFormat::json;
    else throw UsageError("config format must be csv or json");
  } else if (key == "expectations") expectations = v;
  else throw UsageError("unknown config key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  return {
      {"eps_min", format_double(eps_min)},
      {"tol", format_double(tol)},
      {"solver_tol", format_double(solver_tol)},
      {"T0", format_double(T0)},
      {"mode", mode == ladder::Mode::exact ? "exact" : "asymptotic"},
      {"max_evals", std::to_string(max_evals)},
      {"rs_threshold", format_double(rs_threshold)},
      {"fast_path", fast_path ? "true" : "false"},
      {"cache", cache_path},
      {"out", out_dir},
      {"format", format == OutputFormat::csv ? "csv" : "json"},
      {"expectations", expectations},
  };
}

sf::ZetaConfig ExperimentConfig::zeta_config() const {
  sf::ZetaConfig z;
  z.eps_min = eps_min;
  z.default_tol = tol;
  z.rs_threshold = rs_threshold;
  z.fast_path = fast_path;
  return z;
}

moments::CacheSettings ExperimentConfig::cache_settings() const {
  moments::CacheSettings s;
  s.max_evals = max_evals;
  s.zeta = zeta_config();
  return s;
}

ladder::LadderConfig ExperimentConfig::ladder_config() const {
  ladder::LadderConfig l;
  l.mode = mode;
  l.solver_tol = solver_tol;
  l.T0 = T0;
  return l;
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

}  // namespace jacobs
