#include "oracle.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <vector>

namespace oracle {

namespace {

using rational = boost::multiprecision::mpq_rational;

constexpr int kTerms = 55;

// B_{2k}/(2k)! for k = 0..kTerms, Akiyama-Tanigawa.
const std::vector<real>& bernoulli_over_factorial() {
  static const std::vector<real> table = [] {
    const int n_max = 2 * kTerms;
    std::vector<rational> a(n_max + 1);
    std::vector<rational> b(n_max + 1);
    for (int m = 0; m <= n_max; ++m) {
      a[m] = rational(1, m + 1);
      for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
      b[m] = a[0];
    }
    std::vector<real> out(kTerms + 1);
    real fact = 1;
    for (int k = 0; k <= kTerms; ++k) {
      if (k > 0) fact *= real(2 * k - 1) * real(2 * k);
      real num = real(boost::multiprecision::numerator(b[2 * k]).str());
      real den = real(boost::multiprecision::denominator(b[2 * k]).str());
      out[k] = num / den / fact;
    }
    return out;
  }();
  return table;
}

Complex mul(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Complex div(const Complex& x, const Complex& y) {
  real d = y.re * y.re + y.im * y.im;
  return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
}

}  // namespace

Complex zeta(const real& sigma, const real& t) {
  const auto& bf = bernoulli_over_factorial();
  const real pi = boost::math::constants::pi<real>();
  real mod_s = sqrt(sigma * sigma + t * t);
  long N = static_cast<long>(ceil(mod_s / pi).convert_to<double>()) + 25;
  Complex sum{0, 0};
  Complex nps{0, 0};
  for (long n = 1; n <= N; ++n) {
    real ln = log(real(n));
    real mag = exp(-sigma * ln);
    real ph = t * ln;
    Complex z{mag * cos(ph), -mag * sin(ph)};
    if (n < N) {
      sum.re += z.re;
      sum.im += z.im;
    } else {
      nps = z;
    }
  }
  Complex s{sigma, t};
  Complex sm1{sigma - 1, t};
  Complex head = div(Complex{nps.re * N, nps.im * N}, sm1);
  sum.re += head.re + nps.re / 2;
  sum.im += head.im + nps.im / 2;
  // T_k = B_2k/(2k)! (s)_{2k-1} N^{-s-2k+1}
  Complex poch = s;
  real Nr = N;
  Complex npow{nps.re / Nr, nps.im / Nr};
  for (int k = 1; k <= kTerms; ++k) {
    Complex term = mul(poch, npow);
    sum.re += bf[k] * term.re;
    sum.im += bf[k] * term.im;
    poch = mul(poch, Complex{sigma + 2 * k - 1, t});
    poch = mul(poch, Complex{sigma + 2 * k, t});
    npow.re /= Nr * Nr;
    npow.im /= Nr * Nr;
  }
  return sum;
}

std::complex<double> zeta(double sigma, double t) {
  Complex z = zeta(real(sigma), real(t));
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

real abs_zeta_sq_hp(const real& sigma, const real& t) {
  Complex z = zeta(sigma, t);
  return z.re * z.re + z.im * z.im;
}

double abs_zeta_sq(double sigma, double t) {
  return abs_zeta_sq_hp(real(sigma), real(t)).convert_to<double>();
}

real zeta_real(const real& s) {
  const int n = 110;
  std::vector<real> d(n + 1);
  // d_k = n sum_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<real> e(n + 1);
  real sum = 0;
  for (int i = 0; i <= n; ++i) {
    real c = 1;
    if (i > 0) {
      c = e[i - 1] * real(n + i - 1) * real(n - i + 1) * 4 / (real(2 * i - 1) * real(2 * i));
    } else {
      c = real(1) / n;
    }
    e[i] = c;
    sum += c;
    d[i] = n * sum;
  }
  real eta = 0;
  for (int k = 0; k < n; ++k) {
    real v = (d[k] - d[n]) / pow(real(k + 1), s);
    eta += (k % 2 == 0) ? v : real(-v);
  }
  eta = -eta / d[n];
  return eta / (1 - pow(real(2), 1 - s));
}

real moment_boole(double sigma, int power, double a, double b, double h) {
  long panels = std::lround((b - a) / (4 * h));
  real hh = (real(b) - real(a)) / (4 * panels);
  real total = 0;
  auto f = [&](const real& t) {
    real v = abs_zeta_sq_hp(real(sigma), t);
    return power == 2 ? v : v * v;
  };
  real left = f(real(a));
  for (long p = 0; p < panels; ++p) {
    real x0 = real(a) + 4 * p * hh;
    real f1 = f(x0 + hh), f2 = f(x0 + 2 * hh), f3 = f(x0 + 3 * hh), f4 = f(x0 + 4 * hh);
    total += 2 * hh / 45 * (7 * left + 32 * f1 + 12 * f2 + 32 * f3 + 7 * f4);
    left = f4;
  }
  return total;
}

}  // namespace oracle
