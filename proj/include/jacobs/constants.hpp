#pragma once

namespace jacobs {

struct Constants {
  long double euler_c;
  long double ln_2pi;
  long double hli_linear;    // 1 + ln 2pi - 2c
  long double ingham_coeff;  // 1 / (2 pi^2)
};

const Constants& constants();

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

}  // namespace jacobs
