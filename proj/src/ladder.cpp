#include "jacobs/ladder.hpp"

#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace jacobs::ladder {

namespace {

long double one_minus_c() { return 1.0L - constants().euler_c; }

// Accuracy requested from J at abscissa x.  Never below what the cached
// series can deliver, so ladder queries always go through the cache.
double j_tol(double x, const LadderConfig& cfg, const moments::MomentCache& cache) {
  double want = 0.01 * cfg.solver_tol * x * defining_map_derivative(x);
  return std::max(want, 2.0 * cache.settings().density(2) * x);
}

// Safeguarded Newton on an increasing function with f(lo) < 0 < f(hi).
// Returns the last evaluated point.
double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& df, double lo, double hi, double x,
                        double ftol, double xtol, int max_iter, const char* what) {
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(fx) <= ftol) return x;
    if (fx < 0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= xtol) return x;
    double d = df(x);
    double xn = d > 0 ? x - fx / d : std::nan("");
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    x = xn;
    fx = f(x);
  }
  std::ostringstream os;
  os << what << ": no convergence after " << max_iter << " iterations, bracket [" << lo << ", " << hi
     << "], residual " << fx;
  throw SolverError(os.str(), lo, hi, max_iter);
}

void require_base(double T, const LadderConfig& cfg, int rank = -1) {
  if (!std::isfinite(T)) throw DomainError("ladder argument must be finite");
  if (T < cfg.T0) {
    std::ostringstream os;
    if (rank >= 0) os << "rank " << rank << ": ";
    os << "T=" << T << " is below T0=" << cfg.T0;
    throw RangeError(os.str(), rank);
  }
}

}  // namespace

void validate(const LadderConfig& cfg) {
  if (!(cfg.solver_tol > 0 && cfg.solver_tol <= 1e-4))
    throw DomainError("solver_tol must lie in (0, 1e-4]");
  if (!(cfg.T0 >= 2) || !std::isfinite(cfg.T0)) throw DomainError("T0 must be >= 2");
  if (cfg.max_iterations < 1) throw DomainError("max_iterations must be positive");
  if (cfg.k_cap < 0) throw DomainError("k cap must be non-negative");
}

double defining_map(double u) {
  long double x = u;
  const auto& k = constants();
  return static_cast<double>(x * std::log(x) + (k.euler_c - k.ln_2pi) * x);
}

double defining_map_derivative(double u) {
  const auto& k = constants();
  return static_cast<double>(std::log(static_cast<long double>(u)) + 1 + k.euler_c - k.ln_2pi);
}

double ladder_J(double T, const LadderConfig& cfg, moments::MomentCache& cache) {
  if (cfg.mode == Mode::asymptotic) return moments::asymptotic_J(T);
  return moments::hardy_littlewood_J(T, cache, j_tol(T, cfg, cache)).value;
}

double ladder_value(double T, const LadderConfig& cfg, moments::MomentCache& cache) {
  validate(cfg);
  require_base(T, cfg);
  const double Y = ladder_J(T, cfg, cache);
  auto g = [Y](double u) { return defining_map(u) - Y; };
  if (!(g(T) > 0)) {
    std::ostringstream os;
    os << "phi_1: F(T) <= J(T) at T=" << T << ", no root below T";
    throw SolverError(os.str(), 2.0, T, 0);
  }
  double seed = T - static_cast<double>(one_minus_c()) * T / std::log(T);
  return solve_increasing(g, defining_map_derivative, 2.0, T, seed, 0.01 * cfg.solver_tol * Y,
                          1e-3 * cfg.solver_tol * T, cfg.max_iterations, "phi_1");
}

double ladder_inverse(double T, const LadderConfig& cfg, moments::MomentCache& cache) {
  validate(cfg);
  require_base(T, cfg);
  const double Y = defining_map(T);
  auto f = [&](double x) { return ladder_J(x, cfg, cache) - Y; };
  std::function<double(double)> df;
  if (cfg.mode == Mode::asymptotic) {
    // d/dx of x ln x - (1 + ln 2pi - 2c) x
    df = [](double x) {
      const auto& k = constants();
      return static_cast<double>(std::log(static_cast<long double>(x)) - k.ln_2pi + 2 * k.euler_c);
    };
  } else {
    const sf::ZetaEvaluator& ev = cache.evaluator(0.5);
    df = [&ev](double x) { return ev.best_effort(x).abs_sq; };
  }

  const double h = static_cast<double>(one_minus_c()) * T / std::log(T);
  double lo = T;
  double flo = f(lo);
  if (!(flo < 0)) {
    std::ostringstream os;
    os << "inverse phi_1: J(T) >= F(T) at T=" << T;
    throw SolverError(os.str(), T, T, 0);
  }
  double step = 2 * h;
  double hi = T + step;
  int grow = 0;
  while (!(f(hi) > 0)) {
    if (++grow > 20) {
      std::ostringstream os;
      os << "inverse phi_1: no upper bracket found above T=" << T;
      throw SolverError(os.str(), lo, hi, grow);
    }
    lo = hi;
    step *= 2;
    hi = T + step;
  }
  return solve_increasing(f, df, lo, hi, T + h, 0.1 * cfg.solver_tol * T * defining_map_derivative(T),
                          1e-3 * cfg.solver_tol * T, cfg.max_iterations, "inverse phi_1");
}

ReverseIterationSequence reverse_iterations(double T, int k, const LadderConfig& cfg,
                                            moments::MomentCache& cache) {
  validate(cfg);
  require_base(T, cfg);
  if (k < 0 || k > cfg.k_cap) {
    std::ostringstream os;
    os << "k=" << k << " outside [0, " << cfg.k_cap << "]";
    throw DomainError(os.str());
  }
  ReverseIterationSequence seq;
  seq.base = T;
  seq.iterates.push_back(T);
  for (int r = 1; r <= k; ++r) {
    double next;
    try {
      next = ladder_inverse(seq.iterates.back(), cfg, cache);
    } catch (const SolverError& e) {
      std::ostringstream os;
      os << "rank " << r << ": " << e.what();
      throw SolverError(os.str(), e.bracket_lo(), e.bracket_hi(), e.iterations());
    }
    seq.iterates.push_back(next);
  }
  check_sequence(seq, cfg, cache);
  return seq;
}

void check_sequence(const ReverseIterationSequence& seq, const LadderConfig& cfg,
                    moments::MomentCache& cache) {
  for (int r = 1; r <= seq.k(); ++r) {
    double prev = seq.iterates[r - 1], cur = seq.iterates[r];
    if (!(cur > prev)) {
      std::ostringstream os;
      os << "rank " << r << ": iterates not increasing (" << prev << " -> " << cur << ")";
      throw SolverError(os.str(), prev, cur, 0);
    }
    double back = ladder_value(cur, cfg, cache);
    if (std::abs(back - prev) > cfg.solver_tol * prev) {
      std::ostringstream os;
      os << "rank " << r << ": phi_1(T^" << r << ")=" << back << " misses T^" << r - 1 << "=" << prev;
      throw SolverError(os.str(), prev, cur, 0);
    }
  }
}

std::vector<double> forward_iterations(double t, int k, const LadderConfig& cfg,
                                       moments::MomentCache& cache) {
  validate(cfg);
  if (k < 0 || k > cfg.k_cap) throw DomainError("k outside the iteration cap");
  require_base(t, cfg, 0);
  std::vector<double> out{t};
  for (int r = 1; r <= k; ++r) {
    double v = ladder_value(out.back(), cfg, cache);
    require_base(v, cfg, r);
    out.push_back(v);
  }
  return out;
}

Table spacing_report(const ReverseIterationSequence& seq) {
  if (seq.k() < 1) throw DomainError("spacing report needs k >= 1");
  Table t;
  t.columns = {"r", "T^(r-1)", "T^r", "gap", "(1-c)pi(Tr)", "ratio", "gap_ratio"};
  double prev_gap = 0;
  for (int r = 1; r <= seq.k(); ++r) {
    double a = seq.iterates[r - 1], b = seq.iterates[r];
    double gap = b - a;
    double ref = static_cast<double>(one_minus_c() * sf::prime_counting_approx(b));
    Cell adj;
    if (r > 1) adj = gap / prev_gap;
    t.add_row({static_cast<long long>(r), a, b, gap, ref, gap / ref, adj});
    prev_gap = gap;
  }
  return t;
}

IncrementReport increment_energy_report(const ReverseIterationSequence& seq,
                                        moments::MomentCache& cache) {
  if (seq.k() < 1) throw DomainError("increment report needs k >= 1");
  IncrementReport rep;
  rep.table.columns = {"r", "T^(r-1)", "T^r", "increment", "(1-c)T^(r-1)", "ratio",
                       "increment_ratio", "err"};
  long double sum = 0;
  double max_tol = 0, prev = 0;
  for (int r = 1; r <= seq.k(); ++r) {
    double a = seq.iterates[r - 1], b = seq.iterates[r];
    double tol = moments::default_tol(cache, 2, a, b);
    max_tol = std::max(max_tol, tol);
    moments::MomentResult m = moments::second_moment(a, b, 0.5, cache, tol);
    double ref = static_cast<double>(one_minus_c() * a);
    Cell adj;
    if (r > 1) adj = m.value / prev;
    rep.table.add_row({static_cast<long long>(r), a, b, m.value, ref, m.value / ref, adj, m.err_estimate});
    sum += m.value;
    prev = m.value;
  }
  double a = seq.iterates.front(), b = seq.iterates.back();
  double tol = moments::default_tol(cache, 2, a, b);
  max_tol = std::max(max_tol, tol);
  rep.full_integral = moments::second_moment(a, b, 0.5, cache, tol).value;
  rep.sum_increments = static_cast<double>(sum);
  rep.partition_gap = std::abs(rep.sum_increments - rep.full_integral);
  rep.partition_tol = 2.0 * seq.k() * max_tol;
  rep.partition_holds = rep.partition_gap <= rep.partition_tol;
  return rep;
}

}  // namespace jacobs::ladder
