#include "rs_coefficients.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace jacobs::sf::detail {

namespace mp = boost::multiprecision;

namespace {

using wide = mp::number<mp::cpp_bin_float<320>>;
using mid = mp::number<mp::cpp_bin_float<50>>;

constexpr int kHalfTerms = 95;       // c_k known for k < 2*kHalfTerms
constexpr int kMaxOrder = 60;
constexpr long double kTailRel = 1e-19L;

std::vector<mp::cpp_int> euler_numbers(int count) {
  // E[n] holds E_{2n}
  std::vector<mp::cpp_int> e(count);
  e[0] = 1;
  for (int n = 1; n < count; ++n) {
    mp::cpp_int acc = 0;
    mp::cpp_int binom = 1;  // C(2n, j)
    for (int j = 0; j < 2 * n; ++j) {
      if (j % 2 == 0) acc += binom * e[j / 2];
      binom = binom * (2 * n - j) / (j + 1);
    }
    e[n] = -acc;
  }
  return e;
}

RsTables build_tables() {
  const int J = kHalfTerms;
  const wide pi = boost::math::constants::pi<wide>();
  auto E = euler_numbers(J + 1);

  std::vector<wide> v(J + 1), w(2 * J + 1);
  wide fact = 1, pipow = 1;
  for (int n = 0; n <= 2 * J; ++n) {
    if (n > 0) {
      fact *= n;
      pipow *= pi;
    }
    w[n] = pipow / (fact * mp::pow(wide(2), n));
  }
  fact = 1;
  pipow = 1;
  for (int n = 0; n <= J; ++n) {
    if (n > 0) {
      fact *= wide(2 * n - 1) * wide(2 * n);
      pipow *= pi * pi;
    }
    wide val = wide(E[n]) * pipow / fact;
    v[n] = (n % 2 == 0) ? val : wide(-val);
  }

  const wide mu = mp::sqrt(wide(2)) / 2;
  const wide nu_re = mp::cos(3 * pi / 8) / 2;
  const wide nu_im = mp::sin(3 * pi / 8) / 2;

  const int K = 2 * J;
  std::vector<wide> c_re(K, wide(0)), c_im(K, wide(0));
  for (int n = 0; n < J; ++n) {
    wide s1 = 0;
    for (int k = 0; k <= n; ++k) {
      wide term = v[k] * w[2 * n - 2 * k];
      s1 += (k % 2 == 0) ? term : wide(-term);
    }
    wide p2_re = 0, p2_im = 0;
    for (int k = 0; k <= n; ++k) {
      wide term = v[k] * w[n - k];
      switch ((n - k) % 4) {
        case 0: p2_re += term; break;
        case 1: p2_im += term; break;
        case 2: p2_re -= term; break;
        default: p2_im -= term; break;
      }
    }
    wide sign = (n % 2 == 0) ? wide(-1) : wide(1);  // (-1)^(n+1)
    c_re[2 * n] = nu_re * p2_re - nu_im * p2_im;
    c_im[2 * n] = mu * sign * s1 + nu_re * p2_im + nu_im * p2_re;
  }

  RsTables tables;
  for (int m = 0; m <= kMaxOrder; ++m) {
    std::vector<cld> row;
    for (int j = (m % 2); j + m < K; j += 2) {
      wide ratio = 1;
      for (int r = 1; r <= m; ++r) ratio *= wide(j + r);
      row.emplace_back(static_cast<long double>(c_re[j + m] * ratio),
                       static_cast<long double>(c_im[j + m] * ratio));
    }
    long double total = 0;
    for (const auto& x : row) total += std::abs(x);
    std::size_t keep = row.size();
    long double tail = 0;
    while (keep > 0) {
      long double next = tail + std::abs(row[keep - 1]);
      if (next > kTailRel * total) break;
      tail = next;
      --keep;
    }
    if (keep == row.size()) break;  // series not resolved at this order
    row.resize(keep);
    std::vector<double> re, im;
    for (const auto& x : row) {
      re.push_back(static_cast<double>(x.real()));
      im.push_back(static_cast<double>(x.imag()));
    }
    tables.deriv_re.push_back(std::move(re));
    tables.deriv_im.push_back(std::move(im));
    tables.max_order = m;
  }
  return tables;
}

}  // namespace

const RsTables& rs_tables() {
  static const RsTables tables = build_tables();
  return tables;
}

std::vector<std::vector<std::complex<double>>> rs_correction_coefficients(long double sigma, int L) {
  std::vector<std::vector<mid>> d(L);
  const mid ps = mid(1) - 2 * mid(sigma);
  auto get = [&](int n, int k) -> mid {
    if (n < 0 || k < 0 || k >= static_cast<int>(d[n].size())) return mid(0);
    return d[n][k];
  };
  d[0] = {mid(1)};
  for (int n = 1; n < L; ++n) {
    d[n].assign(3 * n / 2 + 1, mid(0));
    for (int k = 0; k <= 3 * n / 2; ++k) {
      int m = 3 * n - 2 * k;
      if (m != 0) {
        d[n][k] = -mid(m + 1) * get(n - 1, k - 2) + get(n - 1, k) / mid(4 * m) +
                  ps / mid(2 * m) * get(n - 1, k - 1);
      } else {
        mid s = 0;
        for (int r = 0; r < k; ++r) {
          mid f = 1;  // (2k-2r)!/(k-r)!
          for (int q = k - r + 1; q <= 2 * (k - r); ++q) f *= q;
          mid term = d[n][r] * f;
          s += ((k - r) % 2 == 0) ? term : mid(-term);
        }
        d[n][k] = -s;
      }
    }
  }

  const mid pi = boost::math::constants::pi<mid>();
  std::vector<std::vector<std::complex<double>>> D(L);
  for (int k = 0; k < L; ++k) {
    for (int l = 0; l <= 3 * k / 2; ++l) {
      mid mag = d[k][l] / (mp::pow(pi, 2 * k - l) * mp::pow(mid(2), l));
      // divide by i^l
      double x = static_cast<double>(mag);
      switch (l % 4) {
        case 0: D[k].emplace_back(x, 0.0); break;
        case 1: D[k].emplace_back(0.0, -x); break;
        case 2: D[k].emplace_back(-x, 0.0); break;
        default: D[k].emplace_back(0.0, x); break;
      }
    }
  }
  return D;
}

}  // namespace jacobs::sf::detail
