#include "jacobs/zeta.hpp"

#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"
#include "rs_coefficients.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cfloat>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace jacobs::sf {

namespace {

using cld = std::complex<long double>;

constexpr int kTableCap = 1 << 16;
constexpr int kWeightCap = 4096;
constexpr int kEmTerms = 30;
constexpr int kRsOrderCap = 20;
constexpr long double kEps = LDBL_EPSILON;
constexpr long double kRoundSafety = 4.0L;
constexpr long double kPhaseEps = 2.0L * DBL_EPSILON;  // final sincos runs in double
constexpr long double kBestEffortTrunc = 1e-16L;

struct Globals {
  std::vector<long double> ln;
  std::vector<int> spf;
  long double two_pi = 0, two_pi_hi = 0, two_pi_lo = 0;
  long double half_pi = 0, half_pi_hi = 0, half_pi_lo = 0;
  long double ln_pi = 0;
  std::vector<long double> em_coef;  // B_2k / (2k)!, k = 0..kEmTerms+1
};

const Globals& globals() {
  static const Globals g = [] {
    Globals x;
    x.ln.resize(kTableCap);
    x.spf.assign(kTableCap, 0);
    for (int n = 1; n < kTableCap; ++n) x.ln[n] = std::log(static_cast<long double>(n));
    for (int n = 2; n < kTableCap; ++n) {
      if (x.spf[n] != 0) continue;
      for (int m = n; m < kTableCap; m += n)
        if (x.spf[m] == 0) x.spf[m] = n;
    }
    using boost::multiprecision::cpp_bin_float_50;
    cpp_bin_float_50 tp = 2 * boost::math::constants::pi<cpp_bin_float_50>();
    x.two_pi_hi = static_cast<long double>(tp);
    x.two_pi_lo = static_cast<long double>(tp - cpp_bin_float_50(x.two_pi_hi));
    x.two_pi = x.two_pi_hi;
    cpp_bin_float_50 hp = boost::math::constants::pi<cpp_bin_float_50>() / 2;
    x.half_pi_hi = static_cast<long double>(hp);
    x.half_pi_lo = static_cast<long double>(hp - cpp_bin_float_50(x.half_pi_hi));
    x.half_pi = x.half_pi_hi;
    x.ln_pi = std::log(kPi);
    x.em_coef.resize(kEmTerms + 2);
    for (int k = 0; k <= kEmTerms + 1; ++k)
      x.em_coef[k] = boost::math::bernoulli_b2n<long double>(k) /
                     boost::math::factorial<long double>(2 * k);
    return x;
  }();
  return g;
}

inline long double log_n(int n) {
  const auto& g = globals();
  return n < kTableCap ? g.ln[n] : std::log(static_cast<long double>(n));
}

// Dekker product: a*b = p + e exactly.
inline void two_prod(long double a, long double b, long double& p, long double& e) {
  constexpr long double split = 4294967297.0L;  // 2^32 + 1
  long double ca = split * a, cb = split * b;
  long double ah = ca - (ca - a), al = a - ah;
  long double bh = cb - (cb - b), bl = b - bh;
  p = a * b;
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

// sin and cos of (hi + lo).  The argument is reduced to |r| <= pi/4 in
// extended precision; the final sincos runs in double, which contributes
// about one double ulp per call and is accounted for by the callers.
inline void sincos_hi_lo(long double hi, long double lo, long double& s, long double& c) {
  const auto& g = globals();
  long long q = std::llround(static_cast<double>(hi / g.half_pi));
  long double r = hi + lo;
  if (q != 0) {
    long double k = static_cast<long double>(q), p, e;
    two_prod(k, g.half_pi_hi, p, e);
    r = (((hi - p) - e) + lo) - k * g.half_pi_lo;
  }
  double sr, cr;
  sincos(static_cast<double>(r), &sr, &cr);
  switch (q & 3) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

// exp(-i t ln n)
inline void unit_phase(long double t, long double lnn, long double& c, long double& s) {
  long double hi, lo;
  two_prod(t, lnn, hi, lo);
  sincos_hi_lo(hi, lo, s, c);
  s = -s;
}

inline long double cabs(const cld& z) {
  return std::sqrt(z.real() * z.real() + z.imag() * z.imag());
}

// z[n] = n^{-it} for n = 1..N; composite n reuse the factor phases.
void fill_phases(long double t, int N, std::vector<long double>& zr, std::vector<long double>& zi) {
  const auto& g = globals();
  zr.resize(N + 1);
  zi.resize(N + 1);
  if (N >= 1) {
    zr[1] = 1.0L;
    zi[1] = 0.0L;
  }
  for (int n = 2; n <= N; ++n) {
    if (n < kTableCap && g.spf[n] != n) {
      int p = g.spf[n], q = n / p;
      zr[n] = zr[p] * zr[q] - zi[p] * zi[q];
      zi[n] = zr[p] * zi[q] + zi[p] * zr[q];
    } else {
      unit_phase(t, log_n(n), zr[n], zi[n]);
    }
  }
}

struct RsSide {
  long double b, c;
};

RsSide rs_side(long double sp) {
  if (sp > 0) return {2.0L, std::pow(9.0L, sp) / 4.44288L};
  return {2.25158L, std::pow(2.0L, -sp) / 4.44288L};
}

const std::vector<long double>& half_lgamma() {
  static const std::vector<long double> table = [] {
    std::vector<long double> v(64);
    for (int L = 1; L < 64; ++L) v[L] = std::lgamma(0.5L * L);
    return v;
  }();
  return table;
}

long double log_rs_bound(const RsSide& side, long double sp, long double log_a, int L) {
  return std::log(3.0L * side.c) + half_lgamma()[L] - L * (std::log(side.b) + log_a) - sp * log_a;
}

}  // namespace

bool admissible_sigma(double sigma, const ZetaConfig& cfg) {
  if (!std::isfinite(sigma)) return false;
  return sigma == 0.5 || sigma >= 0.5 + cfg.eps_min;
}

void validate(const SPoint& p, const ZetaConfig& cfg) {
  if (!std::isfinite(p.sigma) || !std::isfinite(p.t)) throw DomainError("non-finite point");
  if (p.t < 0) throw DomainError("negative t: use the conjugate-symmetry entry point");
  if (!admissible_sigma(p.sigma, cfg)) {
    std::ostringstream os;
    os << "sigma=" << p.sigma << " outside {1/2} U [1/2+" << cfg.eps_min << ", inf)";
    throw DomainError(os.str());
  }
  if (p.sigma == 1.0 && p.t == 0.0) throw DomainError("pole at s=1");
}

struct ZetaEvaluator::Impl {
  long double sigma;
  ZetaConfig cfg;
  std::vector<long double> wx, wy;  // n^-sigma, n^(sigma-1)
  std::vector<std::vector<std::complex<double>>> dx, dy;
  int rs_order_cap = 0;
  RsSide side_x{}, side_y{};

  struct Raw {
    cld value;
    long double trunc = 0;
    long double round = 0;
    int terms = 0;
    int corrections = 0;
    ZetaMethod method = ZetaMethod::euler_maclaurin;
  };

  long double wx_at(int n) const {
    return n < kWeightCap ? wx[n] : std::exp(-sigma * log_n(n));
  }
  long double wy_at(int n) const {
    return n < kWeightCap ? wy[n] : std::exp((sigma - 1.0L) * log_n(n));
  }

  Raw em(long double t, long double tol_trunc) const {
    const auto& g = globals();
    const int m = kEmTerms;
    const cld s(sigma, t);
    long double log_bound = std::log(std::fabs(g.em_coef[m + 1]));
    const long double t2 = t * t;
    for (int j = 0; j <= 2 * m; ++j) log_bound += 0.5L * std::log((sigma + j) * (sigma + j) + t2);
    log_bound += 0.5L * std::log((sigma + 2 * m + 1) * (sigma + 2 * m + 1) + t2) -
                 std::log(sigma + 2 * m + 1);
    long double logN = (log_bound - std::log(tol_trunc)) / (sigma + 2 * m + 1);
    long double Nf = std::ceil(std::exp(std::max(logN, 0.0L)));
    int N = static_cast<int>(std::max(2.0L, std::min(Nf, 1.0e8L)));

    thread_local std::vector<long double> zr, zi;
    fill_phases(t, N, zr, zi);
    long double sr = 0, si = 0, sumsq = 0, sumw = 0;
    for (int n = 1; n < N; ++n) {
      long double w = wx_at(n);
      sr += w * zr[n];
      si += w * zi[n];
      sumsq += w * w;
      sumw += w;
    }
    long double wN = wx_at(N);
    sumsq += wN * wN;
    cld Ns(wN * zr[N], wN * zi[N]);  // N^-s
    long double Nd = N;
    cld head = Nd * Ns / (s - 1.0L);
    cld sum(sr, si);
    sum += head + 0.5L * Ns;
    cld term = g.em_coef[1] * s * Ns / Nd;
    long double tail_abs = cabs(term);
    sum += term;
    for (int k = 1; k < m; ++k) {
      term *= (g.em_coef[k + 1] / g.em_coef[k]) * (s + static_cast<long double>(2 * k - 1)) *
              (s + static_cast<long double>(2 * k)) / (Nd * Nd);
      sum += term;
      tail_abs += cabs(term);
    }
    long double theta = 1.0L + t * log_n(N);
    Raw r;
    r.value = sum;
    r.trunc = std::exp(log_bound - (sigma + 2 * m + 1) * std::log(Nd));
    r.round = kRoundSafety * kEps *
              (theta * std::sqrt(sumsq) + theta * cabs(head) + tail_abs + cabs(sum)) +
              kPhaseEps * (sumw + cabs(head) + tail_abs);
    r.terms = N;
    r.corrections = m;
    r.method = ZetaMethod::euler_maclaurin;
    return r;
  }

  std::optional<Raw> rs(long double t, long double tol_trunc) const {
    const auto& g = globals();
    const long double a = std::sqrt(t / g.two_pi);
    if (a < 1.0L || rs_order_cap < 2) return std::nullopt;
    const long double log_a = 0.5L * std::log(t / g.two_pi);
    const long double log_chi_mag = (1.0L - 2.0L * sigma) * log_a;
    int L = 0;
    long double trunc = 0;
    for (int cand = 2; cand <= rs_order_cap; ++cand) {
      trunc = std::exp(log_rs_bound(side_x, sigma, log_a, cand)) +
              std::exp(log_chi_mag + log_rs_bound(side_y, 1.0L - sigma, log_a, cand));
      if (trunc <= tol_trunc) {
        L = cand;
        break;
      }
    }
    if (L == 0) return std::nullopt;

    const int N = static_cast<int>(std::floor(a));
    const long double p = 1.0L - 2.0L * (a - N);
    thread_local std::vector<long double> zr, zi;
    fill_phases(t, N, zr, zi);
    long double xr = 0, xi = 0, yr = 0, yi = 0, sqx = 0, sqy = 0, sumx = 0, sumy = 0;
    for (int n = 1; n <= N; ++n) {
      long double u = wx_at(n), v = wy_at(n);
      xr += u * zr[n];
      xi += u * zi[n];
      yr += v * zr[n];
      yi += v * zi[n];
      sqx += u * u;
      sqy += v * v;
      sumx += u;
      sumy += v;
    }

    const auto& tab = detail::rs_tables();
    const int M = 3 * (L - 1);
    using cd = std::complex<double>;
    thread_local std::vector<cd> Fp;
    Fp.assign(M + 1, cd(0));
    const double pd = static_cast<double>(p);
    const double q = pd * pd;
    for (int mm = 0; mm <= M; ++mm) {
      const auto& re = tab.deriv_re[mm];
      const auto& im = tab.deriv_im[mm];
      double ar = 0, ai = 0;
      for (std::size_t i = re.size(); i-- > 0;) {
        ar = ar * q + re[i];
        ai = ai * q + im[i];
      }
      if (mm % 2 == 1) {
        ar *= pd;
        ai *= pd;
      }
      Fp[mm] = cd(ar, ai);
    }
    const double inv_a = static_cast<double>(1.0L / a);
    auto correction = [&](const std::vector<std::vector<cd>>& D) {
      double tr = 0, ti = 0, apow = 1.0;
      for (int k = 0; k < L; ++k) {
        double sr = 0, si = 0;
        for (int l = 0; l <= 3 * k / 2; ++l) {
          const cd& d = D[k][l];
          const cd& f = Fp[3 * k - 2 * l];
          sr += d.real() * f.real() - d.imag() * f.imag();
          si += d.real() * f.imag() + d.imag() * f.real();
        }
        tr += sr * apow;
        ti += si * apow;
        apow *= inv_a;
      }
      return cld(tr, ti);
    };
    const cld cx = correction(dx);
    const cld cy = (sigma == 0.5L) ? cx : correction(dy);

    const long double thetaU = t * log_a - 0.5L * t - kPi / 8.0L;
    long double us, uc;
    sincos_hi_lo(thetaU, 0.0L, us, uc);
    const cld U(uc, -us);
    const long double sign = ((N - 1) % 2 == 0) ? 1.0L : -1.0L;
    const cld s3x = sign * std::exp(-sigma * log_a) * U;
    const cld s3y = sign * std::exp((sigma - 1.0L) * log_a) * U;
    const cld Rx = cld(xr, xi) + cx * s3x;
    const cld Ry = cld(yr, yi) + cy * s3y;

    const cld s(sigma, t);
    const cld log_chi = (s - 0.5L) * g.ln_pi + log_gamma((1.0L - s) / 2.0L) - log_gamma(s / 2.0L);
    const long double chi_abs = std::exp(log_chi.real());
    long double cs, cc;
    sincos_hi_lo(log_chi.imag(), 0.0L, cs, cc);
    const cld chi(chi_abs * cc, chi_abs * cs);
    const cld z = Rx + chi * std::conj(Ry);

    const long double theta_main = 1.0L + t * log_n(std::max(N, 2));
    const long double theta_chi = 1.0L + std::abs(thetaU);
    Raw r;
    r.value = z;
    r.trunc = trunc;
    r.round = kRoundSafety * kEps *
              (theta_main * std::sqrt(sqx + chi_abs * chi_abs * sqy) +
               theta_chi * chi_abs * cabs(Ry) +
               theta_chi * (cabs(cx * s3x) + chi_abs * cabs(cy * s3y)) + cabs(z)) +
              kPhaseEps * (sumx + chi_abs * sumy + chi_abs * cabs(Ry) + cabs(cx * s3x) +
                           chi_abs * cabs(cy * s3y));
    r.terms = N;
    r.corrections = L;
    r.method = ZetaMethod::riemann_siegel;
    return r;
  }

  Raw dispatch(long double t, long double tol_trunc) const {
    if (cfg.fast_path && t >= cfg.rs_threshold) {
      if (auto r = rs(t, tol_trunc)) return *r;
    }
    return em(t, tol_trunc);
  }
};

namespace {

ZetaValue to_value(const ZetaEvaluator::Impl::Raw& r) {
  ZetaValue v;
  v.re = static_cast<double>(r.value.real());
  v.im = static_cast<double>(r.value.imag());
  v.abs_sq = v.re * v.re + v.im * v.im;
  // rounding to double adds half an ulp per component
  long double out_round = 0.5L * DBL_EPSILON * std::abs(r.value);
  v.err_bound = static_cast<double>(r.trunc + r.round + out_round);
  v.terms = r.terms;
  v.corrections = r.corrections;
  v.method = r.method;
  return v;
}

void check_t(double t) {
  if (!std::isfinite(t)) throw DomainError("non-finite t");
  if (t < 0) throw DomainError("negative t: use the conjugate-symmetry entry point");
}

void check_tol(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive and finite");
}

}  // namespace

ZetaEvaluator::ZetaEvaluator(double sigma, ZetaConfig cfg) {
  if (!admissible_sigma(sigma, cfg)) {
    std::ostringstream os;
    os << "sigma=" << sigma << " outside {1/2} U [1/2+" << cfg.eps_min << ", inf)";
    throw DomainError(os.str());
  }
  auto impl = std::make_shared<Impl>();
  impl->sigma = sigma;
  impl->cfg = cfg;
  impl->wx.resize(kWeightCap);
  impl->wy.resize(kWeightCap);
  for (int n = 1; n < kWeightCap; ++n) {
    impl->wx[n] = std::exp(-impl->sigma * log_n(n));
    impl->wy[n] = std::exp((impl->sigma - 1.0L) * log_n(n));
  }
  globals();
  if (cfg.fast_path) {
    const auto& tab = detail::rs_tables();
    impl->rs_order_cap = std::min(kRsOrderCap, tab.max_order / 3 + 1);
    impl->dx = detail::rs_correction_coefficients(impl->sigma, impl->rs_order_cap);
    impl->dy = detail::rs_correction_coefficients(1.0L - impl->sigma, impl->rs_order_cap);
    impl->side_x = rs_side(impl->sigma);
    impl->side_y = rs_side(1.0L - impl->sigma);
  }
  impl_ = std::move(impl);
}

double ZetaEvaluator::sigma() const { return static_cast<double>(impl_->sigma); }
const ZetaConfig& ZetaEvaluator::config() const { return impl_->cfg; }

namespace {

ZetaValue checked(const ZetaEvaluator::Impl::Raw& raw, double tol) {
  ZetaValue v = to_value(raw);
  if (v.err_bound > tol) {
    std::ostringstream os;
    os << "tolerance " << tol << " below achievable accuracy " << v.err_bound;
    throw PrecisionError(os.str(), v.err_bound);
  }
  return v;
}

void check_pole(long double sigma, double t) {
  if (sigma == 1.0L && t == 0.0) throw DomainError("pole at s=1");
}

}  // namespace

ZetaValue ZetaEvaluator::evaluate(double t, double tol) const {
  check_t(t);
  check_tol(tol);
  check_pole(impl_->sigma, t);
  if (tol < 1e3 * kEps) {
    ZetaValue best = best_effort(t);
    if (tol < best.err_bound) {
      std::ostringstream os;
      os << "tolerance " << tol << " below achievable accuracy " << best.err_bound;
      throw PrecisionError(os.str(), best.err_bound);
    }
    return best;
  }
  return checked(impl_->dispatch(t, 0.5L * tol), tol);
}

ZetaValue ZetaEvaluator::evaluate_em(double t, double tol) const {
  check_t(t);
  check_tol(tol);
  check_pole(impl_->sigma, t);
  return checked(impl_->em(t, std::max(0.5L * tol, kBestEffortTrunc)), tol);
}

ZetaValue ZetaEvaluator::evaluate_rs(double t, double tol) const {
  check_t(t);
  check_tol(tol);
  auto r = impl_->rs(t, std::max(0.5L * tol, kBestEffortTrunc));
  if (!r) {
    std::ostringstream os;
    os << "Riemann-Siegel path unavailable at t=" << t << " for tolerance " << tol;
    throw DomainError(os.str());
  }
  return checked(*r, tol);
}

ZetaValue ZetaEvaluator::best_effort(double t) const {
  check_t(t);
  check_pole(impl_->sigma, t);
  return to_value(impl_->dispatch(t, kBestEffortTrunc));
}

std::complex<long double> ZetaEvaluator::value_ld(double t, double* err) const {
  check_t(t);
  check_pole(impl_->sigma, t);
  auto raw = impl_->dispatch(t, kBestEffortTrunc);
  if (err) *err = static_cast<double>(raw.trunc + raw.round);
  return raw.value;
}

ZetaValue zeta_point(const SPoint& p, double tol, const ZetaConfig& cfg) {
  validate(p, cfg);
  check_tol(tol);
  return ZetaEvaluator(p.sigma, cfg).evaluate(p.t, tol);
}

double abs_zeta_sq(const SPoint& p, double tol, const ZetaConfig& cfg) {
  return zeta_point(p, tol, cfg).abs_sq;
}

double abs_zeta_sq_signed(double sigma, double t, double tol, const ZetaConfig& cfg) {
  if (!std::isfinite(t)) throw DomainError("non-finite t");
  return abs_zeta_sq(SPoint{sigma, std::fabs(t)}, tol, cfg);
}

double zeta_two_sigma(double sigma, const ZetaConfig& cfg) {
  if (!std::isfinite(sigma)) throw DomainError("non-finite sigma");
  if (sigma <= 0.5) throw DomainError("zeta(2 sigma) diverges for sigma <= 1/2");
  if (sigma < 0.5 + cfg.eps_min) {
    std::ostringstream os;
    os << "sigma=" << sigma << " below 1/2+" << cfg.eps_min;
    throw DomainError(os.str());
  }
  ZetaConfig plain = cfg;
  plain.fast_path = false;
  plain.eps_min = 0.0;
  return ZetaEvaluator(2.0 * sigma, plain).evaluate(0.0, 1e-14).re;
}

double prime_counting_approx(double x) {
  if (!std::isfinite(x) || !(x > 1.0)) throw DomainError("prime_counting_approx needs x > 1");
  return x / std::log(x);
}

}  // namespace jacobs::sf
