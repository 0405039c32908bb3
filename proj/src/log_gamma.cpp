#include "jacobs/constants.hpp"
#include "jacobs/zeta.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <array>
#include <cmath>

namespace jacobs::sf {

namespace {

constexpr int kStirlingTerms = 14;
constexpr long double kShiftRadius = 20.0L;

const std::array<long double, kStirlingTerms>& stirling_coefficients() {
  static const auto coeffs = [] {
    std::array<long double, kStirlingTerms> c{};
    for (int k = 1; k <= kStirlingTerms; ++k)
      c[k - 1] = boost::math::bernoulli_b2n<long double>(k) /
                 (static_cast<long double>(2 * k) * (2 * k - 1));
    return c;
  }();
  return coeffs;
}

}  // namespace

// Principal value only up to a multiple of 2 pi i when shifting is needed.
std::complex<long double> log_gamma(std::complex<long double> z) {
  using cld = std::complex<long double>;
  cld shift = 0;
  while (std::abs(z) < kShiftRadius) {
    shift += std::log(z);
    z += 1.0L;
  }
  const auto& c = stirling_coefficients();
  cld inv = 1.0L / z;
  cld inv2 = inv * inv;
  cld series = 0;
  for (int k = kStirlingTerms - 1; k >= 0; --k) series = series * inv2 + c[k];
  series *= inv;
  cld lg = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2.0L * kPi) + series;
  return lg - shift;
}

}  // namespace jacobs::sf
