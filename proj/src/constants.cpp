#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"

#include <cmath>
#include <numbers>

namespace jacobs {

const Constants& constants() {
  static const Constants k = [] {
    Constants c{};
    c.euler_c = std::numbers::egamma_v<long double>;
    c.ln_2pi = std::log(2.0L * kPi);
    c.hli_linear = 1.0L + c.ln_2pi - 2.0L * c.euler_c;
    c.ingham_coeff = 1.0L / (2.0L * kPi * kPi);
    return c;
  }();
  return k;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precision: return "precision";
    case ErrorKind::budget: return "budget";
    case ErrorKind::solver: return "solver";
    case ErrorKind::range: return "range";
    case ErrorKind::integrity: return "integrity";
    case ErrorKind::compatibility: return "compatibility";
    case ErrorKind::usage: return "usage";
    case ErrorKind::io: return "io";
  }
  return "error";
}

}  // namespace jacobs
