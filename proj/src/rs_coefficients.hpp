#pragma once

#include <complex>
#include <vector>

namespace jacobs::sf::detail {

using cld = std::complex<long double>;

// Taylor data for the derivatives of
//   F(z) = (exp(i pi (z^2/2 + 3/8)) - i sqrt2 cos(pi z / 2)) / (2 cos(pi z)).
// For even m, F^(m)(p) = sum_i deriv[m][i] q^i with q = p^2; for odd m
// the sum is multiplied by p.
struct RsTables {
  int max_order = 0;
  std::vector<std::vector<double>> deriv_re, deriv_im;
};

const RsTables& rs_tables();

// D[k][l] = d_k,l(sigma) / (pi^(2k-l) (2i)^l), k < L, l <= 3k/2.
std::vector<std::vector<std::complex<double>>> rs_correction_coefficients(long double sigma, int L);

}  // namespace jacobs::sf::detail
