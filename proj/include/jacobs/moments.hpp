#pragma once

#include "jacobs/quadrature.hpp"
#include "jacobs/zeta.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace jacobs::moments {

struct MomentSpec {
  double lower = 0;
  double upper = 0;
  double sigma = 0.5;
  int power = 2;
  double tol = 1e-8;  // absolute
};

struct MomentResult {
  double value = 0;
  double err_estimate = 0;
  long long n_evals = 0;
  long long cache_hits = 0;
};

struct CacheSettings {
  double grid_step = 10.0;
  // Absolute error allowed per unit abscissa in the cached cumulative series.
  double density_p2 = 2e-10;
  double density_p4 = 1e-8;
  // Default query tolerance is query_factor * density * length.
  double query_factor = 4.0;
  long long max_evals = 50'000'000;
  int rule_order = 16;
  sf::ZetaConfig zeta;

  double density(int power) const { return power == 4 ? density_p4 : density_p2; }
  std::string grid_id() const;
  // Changes whenever settings that alter cached numbers change.
  std::string version() const;
};

struct SeriesKey {
  double sigma;
  int power;
  std::string grid;
  auto operator<=>(const SeriesKey&) const = default;
};

// Cumulative integral checkpoints at base + i * step.
struct Series {
  SeriesKey key;
  double base = 0;
  double step = 10;
  double tol_density = 0;
  std::string version;
  std::vector<double> cumulative;

  double abscissa(std::size_t i) const { return base + static_cast<double>(i) * step; }
  double max_abscissa() const { return cumulative.empty() ? base : abscissa(cumulative.size() - 1); }
};

class MomentCache {
 public:
  explicit MomentCache(CacheSettings settings = {});

  const CacheSettings& settings() const { return settings_; }
  const std::map<SeriesKey, Series>& all_series() const { return series_; }
  std::size_t checkpoint_count() const;
  double max_abscissa() const;

  Series& series_for(double sigma, int power);
  void insert_series(Series s);
  const sf::ZetaEvaluator& evaluator(double sigma);

  using MemoKey = std::tuple<double, int, double, double, double>;
  const MomentResult* memo_find(const MemoKey& k) const;
  void memo_store(const MemoKey& k, const MomentResult& r);

  // Integrand evaluations spent through this cache since construction.
  long long total_evals() const { return evals_; }
  void add_evals(long long n) { evals_ += n; }

 private:
  CacheSettings settings_;
  std::map<SeriesKey, Series> series_;
  std::map<double, std::shared_ptr<sf::ZetaEvaluator>> evaluators_;
  std::map<MemoKey, MomentResult> memo_;
  long long evals_ = 0;
};

void validate(const MomentSpec& spec, const sf::ZetaConfig& cfg);

MomentResult moment_integral(const MomentSpec& spec, MomentCache& cache);

// Tolerance used when callers do not pass one.
double default_tol(const MomentCache& cache, int power, double lower, double upper);

MomentResult hardy_littlewood_J(double T, MomentCache& cache, std::optional<double> tol = {});
MomentResult strip_second_moment(double T, double sigma, MomentCache& cache,
                                 std::optional<double> tol = {});
MomentResult fourth_moment(double T, MomentCache& cache, std::optional<double> tol = {});
// Line (sigma = 1/2) or strip second moment over an arbitrary range.
MomentResult second_moment(double lower, double upper, double sigma, MomentCache& cache,
                           std::optional<double> tol = {});

// Extends the cumulative series so that it covers `to`.
long long extend(MomentCache& cache, double sigma, int power, double to);

double asymptotic_J(double T);
double asymptotic_fourth(double T);
double asymptotic_strip(double T, double sigma, const sf::ZetaConfig& cfg = {});

void cache_save(const MomentCache& cache, const std::string& path);
MomentCache cache_load(const std::string& path, const CacheSettings& expected);

}  // namespace jacobs::moments
