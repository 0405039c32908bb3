#include "jacobs/errors.hpp"
#include "jacobs/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace jacobs;
using namespace jacobs::quad;

TEST_CASE("Gauss-Legendre rules") {
  for (int order : {8, 16}) {
    const Rule& r = gauss_legendre(order);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(order));
    long double sum = 0;
    for (auto w : r.weights) sum += w;
    CHECK(std::abs(static_cast<double>(sum - 2)) < 1e-17);
    // exact for degree 2n-1
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      long double q = 0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], deg);
      long double exact = deg % 2 ? 0.0L : 2.0L / (deg + 1);
      CHECK(std::abs(static_cast<double>(q - exact)) < 1e-16);
    }
  }
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
}

TEST_CASE("panel width") {
  CHECK(panel_width(0) == 0.5);
  CHECK(panel_width(10) == 0.5);
  CHECK(panel_width(1e4) == doctest::Approx(M_PI / std::log(1e4)));
}

TEST_CASE("integrate smooth and oscillatory functions") {
  Settings s;
  auto cosine = [](double t) { return Sample{std::cos(7.0L * t), 0}; };
  Result r = integrate(cosine, 0, 10, 1e-13, s);
  CHECK(std::abs(static_cast<double>(r.value) - std::sin(70.0) / 7) < 1e-12);
  CHECK(r.err() <= 1e-12);

  auto expo = [](double t) { return Sample{std::exp(-static_cast<long double>(t)), 1e-18L}; };
  r = integrate(expo, 0, 3, 1e-14, s);
  CHECK(std::abs(static_cast<double>(r.value) - (1 - std::exp(-3.0))) < 1e-14);
  CHECK(static_cast<double>(r.integrand_err) == doctest::Approx(3e-18).epsilon(1e-6));

  r = integrate(cosine, 2, 2, 1e-10, s);
  CHECK(r.value == 0);
  CHECK(r.evals == 0);
}

TEST_CASE("additivity of panel marching") {
  Settings s;
  auto f = [](double t) { return Sample{1 + std::sin(t * std::log(t + 2.0L)), 0}; };
  Result whole = integrate(f, 0, 40, 1e-12, s);
  Result a = integrate(f, 0, 17.3, 1e-12, s);
  Result b = integrate(f, 17.3, 40, 1e-12, s);
  CHECK(std::abs(static_cast<double>(whole.value - a.value - b.value)) <= 2 * 40e-12);
}

TEST_CASE("budget error carries the partial result") {
  Settings s;
  s.max_evals = 240;
  auto one = [](double) { return Sample{1.0L, 0}; };
  try {
    integrate(one, 0, 100, 1e-12, s);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.partial() > 0);
    CHECK(e.partial() < 100);
    CHECK(e.n_evals() <= 240);
  }
}

TEST_CASE("argument checks") {
  Settings s;
  auto one = [](double) { return Sample{1.0L, 0}; };
  CHECK_THROWS_AS(integrate(one, 1, 0, 1e-10, s), DomainError);
  s.order = 7;
  CHECK_THROWS_AS(integrate(one, 0, 1, 1e-10, s), DomainError);
}
