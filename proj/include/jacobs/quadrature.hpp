#pragma once

#include <functional>
#include <vector>

namespace jacobs::quad {

struct Rule {
  std::vector<long double> nodes;    // on [-1, 1]
  std::vector<long double> weights;
};

// Gauss-Legendre rule of the given order, computed once and cached.
const Rule& gauss_legendre(int order);

struct Sample {
  long double value;
  long double err;  // absolute error of value
};

using Integrand = std::function<Sample(double)>;

struct Settings {
  int order = 16;  // compared against order/2 on each panel
  long long max_evals = 50'000'000;
  int max_depth = 40;
};

struct Result {
  long double value = 0;
  long double quad_err = 0;
  long double integrand_err = 0;
  long long evals = 0;
  long double err() const { return quad_err + integrand_err; }
};

// Initial panel width min(0.5, pi / ln(max(t, 10))).
double panel_width(double t);

// Panels march left to right from a; each panel is bisected until the two
// rule orders agree within tol_density * width.  Throws BudgetError when
// max_evals would be exceeded.
Result integrate(const Integrand& f, double a, double b, double tol_density, const Settings& s);

}  // namespace jacobs::quad
