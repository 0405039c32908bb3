#include "jacobs/moments.hpp"

#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

namespace jacobs::moments {

namespace {

// Running totals for one moment_integral call.
struct Call {
  MomentCache& cache;
  const sf::ZetaEvaluator& ev;
  int power;
  long long evals = 0;
  long double partial = 0;
  long double partial_err = 0;

  quad::Result integrate(double a, double b, double density) {
    const auto& st = cache.settings();
    quad::Settings qs;
    qs.order = st.rule_order;
    qs.max_evals = st.max_evals - evals;
    const int p = power;
    auto f = [this, p](double t) {
      sf::ZetaValue z = ev.best_effort(t);
      long double a2 = static_cast<long double>(z.re) * z.re + static_cast<long double>(z.im) * z.im;
      long double a1 = std::sqrt(a2);
      long double e = z.err_bound;
      if (p == 2) return quad::Sample{a2, 2 * a1 * e + e * e};
      long double de = 2 * a1 * e + e * e;
      return quad::Sample{a2 * a2, 2 * a2 * de + de * de};
    };
    try {
      quad::Result r = quad::integrate(f, a, b, density, qs);
      evals += r.evals;
      cache.add_evals(r.evals);
      return r;
    } catch (const BudgetError& e) {
      cache.add_evals(e.n_evals());
      throw BudgetError(e.what(), static_cast<double>(partial) + e.partial(),
                        static_cast<double>(partial_err) + e.err_estimate(), evals + e.n_evals());
    }
  }
};

std::size_t first_index_at_or_above(const Series& s, double x) {
  double r = std::ceil((x - s.base) / s.step);
  std::size_t i = r <= 0 ? 0 : static_cast<std::size_t>(r);
  while (s.abscissa(i) < x) ++i;
  while (i > 0 && s.abscissa(i - 1) >= x) --i;
  return i;
}

std::size_t last_index_at_or_below(const Series& s, double x) {
  double r = std::floor((x - s.base) / s.step);
  std::size_t i = r <= 0 ? 0 : static_cast<std::size_t>(r);
  while (i > 0 && s.abscissa(i) > x) --i;
  while (s.abscissa(i + 1) <= x) ++i;
  return i;
}

void ensure(Series& s, std::size_t index, Call& call) {
  if (s.cumulative.empty()) s.cumulative.push_back(0.0);
  const long double budget = static_cast<long double>(s.tol_density) * s.step;
  while (s.cumulative.size() <= index) {
    std::size_t i = s.cumulative.size() - 1;
    // Half the density goes to the rule, the rest covers integrand and storage error.
    quad::Result r = call.integrate(s.abscissa(i), s.abscissa(i + 1), 0.5 * s.tol_density);
    double next = static_cast<double>(s.cumulative[i] + r.value);
    long double store_err = 0.5L * DBL_EPSILON * next;
    if (r.err() + store_err > budget) {
      std::ostringstream os;
      os << "checkpoint cell at t=" << s.abscissa(i) << " reached error " << static_cast<double>(r.err() + store_err)
         << " above the series budget " << static_cast<double>(budget);
      throw PrecisionError(os.str(), static_cast<double>((r.err() + store_err) / s.step));
    }
    if (next < s.cumulative[i]) next = s.cumulative[i];
    s.cumulative.push_back(next);
  }
}

}  // namespace

std::string CacheSettings::grid_id() const {
  std::ostringstream os;
  os << "u" << grid_step;
  return os.str();
}

std::string CacheSettings::version() const {
  std::ostringstream os;
  os << "zeta-em30";
  if (zeta.fast_path) os << "-rs" << zeta.rs_threshold;
  os << "/gl" << rule_order << "/1";
  return os.str();
}

MomentCache::MomentCache(CacheSettings settings) : settings_(std::move(settings)) {
  if (!(settings_.grid_step > 0)) throw DomainError("grid step must be positive");
  if (!(settings_.density_p2 > 0) || !(settings_.density_p4 > 0))
    throw DomainError("cache tolerances must be positive");
}

std::size_t MomentCache::checkpoint_count() const {
  std::size_t n = 0;
  for (const auto& [k, s] : series_) n += s.cumulative.size();
  return n;
}

double MomentCache::max_abscissa() const {
  double m = 0;
  for (const auto& [k, s] : series_)
    if (!s.cumulative.empty()) m = std::max(m, s.max_abscissa());
  return m;
}

Series& MomentCache::series_for(double sigma, int power) {
  SeriesKey key{sigma, power, settings_.grid_id()};
  auto it = series_.find(key);
  if (it == series_.end()) {
    Series s;
    s.key = key;
    s.base = sigma == 0.5 ? 0.0 : 1.0;
    s.step = settings_.grid_step;
    s.tol_density = settings_.density(power);
    s.version = settings_.version();
    it = series_.emplace(key, std::move(s)).first;
  }
  return it->second;
}

void MomentCache::insert_series(Series s) {
  SeriesKey key = s.key;
  series_[key] = std::move(s);
}

const sf::ZetaEvaluator& MomentCache::evaluator(double sigma) {
  auto it = evaluators_.find(sigma);
  if (it == evaluators_.end())
    it = evaluators_.emplace(sigma, std::make_shared<sf::ZetaEvaluator>(sigma, settings_.zeta)).first;
  return *it->second;
}

const MomentResult* MomentCache::memo_find(const MemoKey& k) const {
  auto it = memo_.find(k);
  return it == memo_.end() ? nullptr : &it->second;
}

void MomentCache::memo_store(const MemoKey& k, const MomentResult& r) { memo_[k] = r; }

void validate(const MomentSpec& spec, const sf::ZetaConfig& cfg) {
  if (!std::isfinite(spec.lower) || !std::isfinite(spec.upper) || !std::isfinite(spec.sigma) ||
      !std::isfinite(spec.tol))
    throw DomainError("non-finite moment arguments");
  if (spec.power != 2 && spec.power != 4) throw UsageError("power must be 2 or 4");
  if (spec.power == 4 && spec.sigma != 0.5) throw UsageError("power 4 is only defined on sigma = 1/2");
  if (!sf::admissible_sigma(spec.sigma, cfg)) {
    std::ostringstream os;
    os << "sigma=" << spec.sigma << " outside {1/2} U [1/2+" << cfg.eps_min << ", inf)";
    throw DomainError(os.str());
  }
  if (spec.lower < 0) throw DomainError("lower limit must be >= 0");
  if (spec.sigma != 0.5 && spec.lower < 1) throw DomainError("strip moments start at t >= 1");
  if (spec.upper < spec.lower) throw DomainError("upper limit below lower limit");
  if (!(spec.tol > 0)) throw DomainError("tolerance must be positive");
}

MomentResult moment_integral(const MomentSpec& spec, MomentCache& cache) {
  validate(spec, cache.settings().zeta);
  if (spec.lower == spec.upper) return {};

  MomentCache::MemoKey key{spec.sigma, spec.power, spec.lower, spec.upper, spec.tol};
  if (const MomentResult* hit = cache.memo_find(key)) {
    MomentResult r = *hit;
    r.n_evals = 0;
    r.cache_hits = 1;
    return r;
  }

  Call call{cache, cache.evaluator(spec.sigma), spec.power};
  Series& s = cache.series_for(spec.sigma, spec.power);
  const double len = spec.upper - spec.lower;
  const double density = spec.tol / len;
  long double value = 0, err = 0;
  long long hits = 0;

  bool cached = s.tol_density <= density && spec.lower >= s.base;
  std::size_t gl = 0, gu = 0;
  if (cached) {
    gl = first_index_at_or_above(s, spec.lower);
    gu = last_index_at_or_below(s, spec.upper);
    cached = gl < gu;
  }
  if (cached) {
    std::size_t have = s.cumulative.size();
    hits = (gl < have ? 1 : 0) + (gu < have ? 1 : 0);
    ensure(s, gu, call);
    const double xl = s.abscissa(gl), xu = s.abscissa(gu);
    if (spec.lower < xl) {
      quad::Result r = call.integrate(spec.lower, xl, 0.5 * density);
      value += r.value;
      err += r.err();
    }
    value += static_cast<long double>(s.cumulative[gu]) - s.cumulative[gl];
    err += static_cast<long double>(s.tol_density) * (xu - xl);
    call.partial = value;
    call.partial_err = err;
    if (xu < spec.upper) {
      quad::Result r = call.integrate(xu, spec.upper, 0.5 * density);
      value += r.value;
      err += r.err();
    }
  } else {
    quad::Result r = call.integrate(spec.lower, spec.upper, 0.5 * density);
    value = r.value;
    err = r.err();
  }

  if (err > spec.tol) {
    std::ostringstream os;
    os << "moment over [" << spec.lower << ", " << spec.upper << "] reached error "
       << static_cast<double>(err) << " above tolerance " << spec.tol;
    throw PrecisionError(os.str(), static_cast<double>(err));
  }
  MomentResult out;
  out.value = std::max(0.0, static_cast<double>(value));
  out.err_estimate = static_cast<double>(err);
  out.n_evals = call.evals;
  out.cache_hits = hits;
  cache.memo_store(key, out);
  return out;
}

double default_tol(const MomentCache& cache, int power, double lower, double upper) {
  const auto& st = cache.settings();
  return st.query_factor * st.density(power) * std::max(1.0, upper - lower);
}

MomentResult second_moment(double lower, double upper, double sigma, MomentCache& cache,
                           std::optional<double> tol) {
  MomentSpec spec{lower, upper, sigma, 2, tol ? *tol : default_tol(cache, 2, lower, upper)};
  return moment_integral(spec, cache);
}

MomentResult hardy_littlewood_J(double T, MomentCache& cache, std::optional<double> tol) {
  if (!std::isfinite(T) || T < 0) throw DomainError("J(T) needs T >= 0");
  return second_moment(0.0, T, 0.5, cache, tol);
}

MomentResult strip_second_moment(double T, double sigma, MomentCache& cache, std::optional<double> tol) {
  if (!std::isfinite(T) || T < 1) throw DomainError("strip moment needs T >= 1");
  if (sigma == 0.5) throw DomainError("strip moment needs sigma >= 1/2 + eps_min");
  return second_moment(1.0, T, sigma, cache, tol);
}

MomentResult fourth_moment(double T, MomentCache& cache, std::optional<double> tol) {
  if (!std::isfinite(T) || T < 1) throw DomainError("fourth moment needs T >= 1");
  MomentSpec spec{1.0, T, 0.5, 4, tol ? *tol : default_tol(cache, 4, 1.0, T)};
  return moment_integral(spec, cache);
}

long long extend(MomentCache& cache, double sigma, int power, double to) {
  MomentSpec probe{sigma == 0.5 ? 0.0 : 1.0, std::max(to, sigma == 0.5 ? 0.0 : 1.0), sigma, power, 1.0};
  validate(probe, cache.settings().zeta);
  Call call{cache, cache.evaluator(sigma), power};
  Series& s = cache.series_for(sigma, power);
  std::size_t idx = first_index_at_or_above(s, to);
  ensure(s, idx, call);
  return call.evals;
}

double asymptotic_J(double T) {
  if (!std::isfinite(T) || !(T > 1)) throw DomainError("asymptotic_J needs T > 1");
  long double t = T;
  return static_cast<double>(t * std::log(t) - constants().hli_linear * t);
}

double asymptotic_fourth(double T) {
  if (!std::isfinite(T) || !(T > 1)) throw DomainError("asymptotic_fourth needs T > 1");
  long double t = T, l = std::log(t);
  return static_cast<double>(constants().ingham_coeff * t * l * l * l * l);
}

double asymptotic_strip(double T, double sigma, const sf::ZetaConfig& cfg) {
  if (!std::isfinite(T) || T < 1) throw DomainError("asymptotic_strip needs T >= 1");
  return sf::zeta_two_sigma(sigma, cfg) * T;
}

}  // namespace jacobs::moments
