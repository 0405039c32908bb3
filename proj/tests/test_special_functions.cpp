#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"
#include "jacobs/zeta.hpp"
#include "oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

using namespace jacobs;
using namespace jacobs::sf;

TEST_CASE("constants") {
  const auto& k = constants();
  CHECK(k.euler_c == doctest::Approx(0.5772156649).epsilon(1e-10));
  CHECK(k.ln_2pi == doctest::Approx(1.8378770664).epsilon(1e-10));
  CHECK(k.hli_linear == 1 + k.ln_2pi - 2 * k.euler_c);
  CHECK(k.hli_linear == doctest::Approx(1.6834457366).epsilon(1e-10));
  CHECK(std::abs(k.ingham_coeff * 2 * kPi * kPi - 1) < 1e-18);
  // c to 30 digits from the oracle's arithmetic
  oracle::real c = boost::math::constants::euler<oracle::real>();
  CHECK(std::abs(static_cast<double>(k.euler_c - c.convert_to<long double>())) < 1e-18);
}

TEST_CASE("zeta_point anchors") {
  ZetaValue z2 = zeta_point({2, 0}, 1e-12);
  CHECK(z2.re == doctest::Approx(1.6449340668).epsilon(1e-10));
  CHECK(z2.im == 0);
  CHECK(std::abs(z2.re - static_cast<double>(kPi * kPi / 6)) < 1e-12);

  ZetaValue zero = zeta_point({0.5, 14.1347251417}, 1e-10);
  CHECK(zero.abs_sq < 1e-12);

  ZetaValue half = zeta_point({0.5, 0}, 1e-10);
  double ref = oracle::zeta_real(oracle::real(0.5)).convert_to<double>();
  CHECK(half.re == doctest::Approx(-1.4603545088).epsilon(1e-10));
  CHECK(std::abs(half.re - ref) < 1e-10);
  CHECK(half.im == 0);
}

TEST_CASE("abs_zeta_sq and conjugate symmetry") {
  CHECK(abs_zeta_sq({2, 0}, 1e-12) == doctest::Approx(2.70580808427).epsilon(1e-10));
  CHECK(abs_zeta_sq({0.5, 14.1347251417}, 1e-10) < 1e-12);
  for (double sigma : {0.5, 0.75, 2.0})
    for (double t : {3.0, 77.5, 1234.5, 9876.25}) {
      double plus = abs_zeta_sq_signed(sigma, t, 1e-10);
      double minus = abs_zeta_sq_signed(sigma, -t, 1e-10);
      CHECK(plus == minus);
      ZetaValue v = zeta_point({sigma, t}, 1e-10);
      CHECK(std::abs(plus - v.abs_sq) <= 2e-10 * std::sqrt(v.abs_sq) + 1e-15);
      CHECK(std::abs(v.abs_sq - (v.re * v.re + v.im * v.im)) <= 1e-15 * v.abs_sq);
    }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(zeta_point({0.4, 1}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({0.52, 1}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({NAN, 1}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({0.5, INFINITY}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({0.5, -1}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({1, 0}, 1e-10), DomainError);
  CHECK_THROWS_AS(zeta_point({0.5, 10}, 0), DomainError);
  try {
    zeta_point({0.5, 5000}, 1e-25);
    FAIL("expected PrecisionError");
  } catch (const PrecisionError& e) {
    CHECK(e.achievable() > 1e-25);
    CHECK(e.achievable() < 1e-9);
  }
  // eps_min is a config constant
  ZetaConfig wide;
  wide.eps_min = 0.01;
  CHECK_NOTHROW(zeta_point({0.52, 1}, 1e-10, wide));
}

TEST_CASE("oracle agreement on a 200 point grid") {
  std::vector<double> sigmas{0.5, 0.6, 0.75, 1.0, 2.0};
  double worst = 0;
  for (double sigma : sigmas) {
    ZetaEvaluator ev(sigma);
    for (int j = 0; j < 40; ++j) {
      // denser at small t, where the EM path does all the work
      double t = 1e4 * std::pow(j / 39.0, 2) + 0.37 * j;
      if (sigma == 1.0 && t == 0) t = 0.25;
      ZetaValue v = ev.evaluate(t, 1e-9);
      std::complex<double> o = oracle::zeta(sigma, t);
      double d = std::abs(std::complex<double>(v.re, v.im) - o);
      worst = std::max(worst, d);
      CHECK_MESSAGE(d <= 1e-8, "sigma=" << sigma << " t=" << t << " diff=" << d);
      CHECK_MESSAGE(d <= std::max(v.err_bound, 1e-15), "error estimate not conservative at sigma=" << sigma
                                                                                                 << " t=" << t);
    }
  }
  MESSAGE("worst deviation " << worst);
}

TEST_CASE("Riemann-Siegel and Euler-Maclaurin agree") {
  for (double sigma : {0.5, 0.75, 1.5}) {
    ZetaEvaluator ev(sigma);
    for (double t : {1000.0, 2345.6, 7777.7}) {
      ZetaValue a = ev.evaluate_em(t, 1e-11);
      ZetaValue b = ev.evaluate_rs(t, 1e-11);
      CHECK(a.method == ZetaMethod::euler_maclaurin);
      CHECK(b.method == ZetaMethod::riemann_siegel);
      CHECK(std::hypot(a.re - b.re, a.im - b.im) < 3e-11);
    }
  }
  ZetaEvaluator ev(0.5);
  CHECK(ev.evaluate(999.0, 1e-10).method == ZetaMethod::euler_maclaurin);
  CHECK(ev.evaluate(1001.0, 1e-10).method == ZetaMethod::riemann_siegel);
  ZetaConfig slow;
  slow.fast_path = false;
  CHECK(ZetaEvaluator(0.5, slow).evaluate(5000.0, 1e-10).method == ZetaMethod::euler_maclaurin);
}

TEST_CASE("term counts grow monotonically and like sqrt(t)") {
  ZetaConfig em_only;
  em_only.fast_path = false;
  for (double sigma : {0.5, 0.75, 2.0}) {
    ZetaEvaluator em(sigma, em_only);
    ZetaEvaluator rs(sigma);
    int prev_em = 0, prev_rs = 0;
    for (double t = 0; t <= 12000; t += 97.3) {
      int n = em.evaluate(t, 1e-10).terms;
      CHECK(n >= prev_em);
      prev_em = n;
      if (t >= 1000) {
        ZetaValue v = rs.evaluate(t, 1e-10);
        CHECK(v.terms >= prev_rs);
        CHECK(v.terms <= 2 * std::sqrt(t / (2 * M_PI)) + 2);
        prev_rs = v.terms;
      }
    }
  }
}

TEST_CASE("zeta_two_sigma") {
  CHECK(std::abs(zeta_two_sigma(1.0) - static_cast<double>(kPi * kPi / 6)) < 1e-12);
  double z3 = oracle::zeta_real(oracle::real(3)).convert_to<double>();
  double z15 = oracle::zeta_real(oracle::real(1.5)).convert_to<double>();
  CHECK(std::abs(zeta_two_sigma(1.5) - z3) < 1e-12);
  CHECK(zeta_two_sigma(1.5) == doctest::Approx(1.2020569032).epsilon(1e-10));
  CHECK(std::abs(zeta_two_sigma(0.75) - z15) < 1e-12);
  CHECK(zeta_two_sigma(0.75) == doctest::Approx(2.6123753487).epsilon(1e-10));
  double prev = zeta_two_sigma(1);
  for (double s : {2.0, 4.0, 8.0}) {
    double v = zeta_two_sigma(s);
    CHECK(v < prev);
    CHECK(v > 1);
    prev = v;
  }
  CHECK_THROWS_AS(zeta_two_sigma(0.5), DomainError);
  CHECK_THROWS_AS(zeta_two_sigma(0.3), DomainError);
  CHECK_THROWS_AS(zeta_two_sigma(0.51), DomainError);
}

TEST_CASE("prime_counting_approx") {
  CHECK(prime_counting_approx(std::exp(1.0)) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(prime_counting_approx(std::exp(2.0)) == doctest::Approx(std::exp(2.0) / 2).epsilon(1e-15));
  oracle::real x = 10000;
  double ref = (x / log(x)).convert_to<double>();
  CHECK(prime_counting_approx(1e4) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(prime_counting_approx(1e4) == doctest::Approx(1085.74).epsilon(1e-5));
  CHECK_THROWS_AS(prime_counting_approx(1.0), DomainError);
  CHECK_THROWS_AS(prime_counting_approx(0.5), DomainError);
}

TEST_CASE("log_gamma on the real axis") {
  for (double x : {0.5, 1.0, 2.5, 7.25, 30.0, 150.5}) {
    auto v = log_gamma({static_cast<long double>(x), 0.0L});
    CHECK(static_cast<double>(v.real()) == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  }
}
