#pragma once

#include <complex>
#include <memory>

namespace jacobs::sf {

struct ZetaConfig {
  double eps_min = 0.05;
  double default_tol = 1e-10;
  // Riemann-Siegel is used at t >= rs_threshold when fast_path is on.
  double rs_threshold = 1000.0;
  bool fast_path = true;
};

// sigma = 1/2 exactly or sigma >= 1/2 + eps_min; t >= 0.
struct SPoint {
  double sigma;
  double t;
};

void validate(const SPoint& p, const ZetaConfig& cfg);
bool admissible_sigma(double sigma, const ZetaConfig& cfg);

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

struct ZetaValue {
  double re = 0.0;
  double im = 0.0;
  double abs_sq = 0.0;
  double err_bound = 0.0;
  int terms = 0;        // length of the main Dirichlet sum
  int corrections = 0;  // Bernoulli terms (EM) or correction order (RS)
  ZetaMethod method = ZetaMethod::euler_maclaurin;
};

// Per-sigma evaluator holding the precomputed tables.  Immutable after
// construction, so one instance may be shared between threads.
class ZetaEvaluator {
 public:
  explicit ZetaEvaluator(double sigma, ZetaConfig cfg = {});

  double sigma() const;
  const ZetaConfig& config() const;

  // Throws PrecisionError when tol is below the achievable accuracy.
  ZetaValue evaluate(double t, double tol) const;
  // Forced paths, used for cross checks.
  ZetaValue evaluate_em(double t, double tol) const;
  ZetaValue evaluate_rs(double t, double tol) const;
  // Working-precision evaluation, never throws PrecisionError.
  ZetaValue best_effort(double t) const;

  std::complex<long double> value_ld(double t, double* err = nullptr) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

ZetaValue zeta_point(const SPoint& p, double tol, const ZetaConfig& cfg = {});
double abs_zeta_sq(const SPoint& p, double tol, const ZetaConfig& cfg = {});
// Accepts t of either sign: |zeta(sigma - i|t|)| = |zeta(sigma + i|t|)|.
double abs_zeta_sq_signed(double sigma, double t, double tol, const ZetaConfig& cfg = {});
double zeta_two_sigma(double sigma, const ZetaConfig& cfg = {});
double prime_counting_approx(double x);

std::complex<long double> log_gamma(std::complex<long double> z);

}  // namespace jacobs::sf
