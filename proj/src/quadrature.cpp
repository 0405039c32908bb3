#include "jacobs/quadrature.hpp"

#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace jacobs::quad {

namespace {

Rule build_rule(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(kPi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-21L) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

struct Accumulator {
  const Integrand& f;
  const Rule& hi;
  const Rule& lo;
  const Settings& s;
  Result res;

  struct Panel {
    long double q_hi, q_lo, ierr;
  };

  Panel eval(double l, double r) {
    long double half = 0.5L * (static_cast<long double>(r) - l);
    long double mid = 0.5L * (static_cast<long double>(r) + l);
    Panel p{0, 0, 0};
    for (std::size_t i = 0; i < hi.nodes.size(); ++i) {
      Sample v = f(static_cast<double>(mid + half * hi.nodes[i]));
      p.q_hi += hi.weights[i] * v.value;
      p.ierr += hi.weights[i] * v.err;
    }
    for (std::size_t i = 0; i < lo.nodes.size(); ++i)
      p.q_lo += lo.weights[i] * f(static_cast<double>(mid + half * lo.nodes[i])).value;
    p.q_hi *= half;
    p.q_lo *= half;
    p.ierr *= half;
    res.evals += static_cast<long long>(hi.nodes.size() + lo.nodes.size());
    return p;
  }

  void panel(double l, double r, long double ptol, int depth) {
    long long cost = static_cast<long long>(hi.nodes.size() + lo.nodes.size());
    if (res.evals + cost > s.max_evals) {
      std::ostringstream os;
      os << "evaluation budget " << s.max_evals << " exhausted at t=" << l;
      throw BudgetError(os.str(), static_cast<double>(res.value), static_cast<double>(res.err()),
                        res.evals);
    }
    Panel p = eval(l, r);
    long double diff = std::fabs(p.q_hi - p.q_lo);
    double m = 0.5 * (l + r);
    // Bisection cannot beat the integrand's own error, so stop at that floor.
    bool noise = diff <= 4 * p.ierr;
    if (diff <= ptol || noise || depth >= s.max_depth || m <= l || m >= r) {
      res.value += p.q_hi;
      res.quad_err += diff;
      res.integrand_err += p.ierr;
      return;
    }
    panel(l, m, 0.5L * ptol, depth + 1);
    panel(m, r, 0.5L * ptol, depth + 1);
  }
};

}  // namespace

const Rule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, Rule> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(order);
  if (it == rules.end()) it = rules.emplace(order, build_rule(order)).first;
  return it->second;
}

double panel_width(double t) {
  return std::min(0.5, static_cast<double>(kPi) / std::log(std::max(t, 10.0)));
}

Result integrate(const Integrand& f, double a, double b, double tol_density, const Settings& s) {
  if (!(b >= a)) throw DomainError("integration bounds out of order");
  if (s.order < 2 || s.order % 2 != 0) throw DomainError("rule order must be even and >= 2");
  Accumulator acc{f, gauss_legendre(s.order), gauss_legendre(s.order / 2), s, {}};
  double x = a;
  while (x < b) {
    double w = panel_width(x);
    double next = x + w;
    if (next >= b || (b - next) < 1e-3 * w) next = b;
    acc.panel(x, next, static_cast<long double>(tol_density) * (next - x), 0);
    x = next;
  }
  return acc.res;
}

}  // namespace jacobs::quad
