#pragma once

#include "jacobs/ladder.hpp"
#include "jacobs/moments.hpp"
#include "jacobs/zeta.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jacobs {

enum class OutputFormat { csv, json };

struct ExperimentConfig {
  double eps_min = 0.05;
  double tol = 1e-10;  // default zeta tolerance
  double solver_tol = 1e-10;
  double T0 = 200;
  ladder::Mode mode = ladder::Mode::exact;
  long long max_evals = 50'000'000;
  double rs_threshold = 1000;
  bool fast_path = true;
  std::string cache_path = "jladder-cache.txt";
  std::string out_dir = "jladder-out";
  OutputFormat format = OutputFormat::csv;
  std::string expectations;  // empty: built-in bands

  void validate() const;
  // UsageError on unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  // Every key with its resolved value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  sf::ZetaConfig zeta_config() const;
  moments::CacheSettings cache_settings() const;
  ladder::LadderConfig ladder_config() const;
};

// Flat key=value lines; '#' starts a comment.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

}  // namespace jacobs
