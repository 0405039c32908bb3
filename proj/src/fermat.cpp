#include "jacobs/fermat.hpp"

#include "jacobs/errors.hpp"

#include <cctype>

namespace jacobs {

namespace {

BigInt parse_positive(const std::string& s, const char* name) {
  bool ok = !s.empty() && s.size() < 10000;
  for (char c : s) ok = ok && std::isdigit(static_cast<unsigned char>(c));
  if (!ok) throw UsageError(std::string(name) + " must be a positive decimal integer, got '" + s + "'");
  BigInt v(s);
  if (v < 1) throw UsageError(std::string(name) + " must be >= 1");
  return v;
}

}  // namespace

FermatRational::FermatRational(BigInt x, BigInt y, BigInt z, unsigned n)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), n_(n) {
  if (x_ < 1 || y_ < 1 || z_ < 1) throw UsageError("x, y, z must be >= 1");
  if (n_ < 1) throw UsageError("n must be >= 1");
  BigInt xn = boost::multiprecision::pow(x_, n_);
  BigInt yn = boost::multiprecision::pow(y_, n_);
  BigInt zn = boost::multiprecision::pow(z_, n_);
  equals_one_ = xn + yn == zn;
  value_ = BigRational(xn + yn, zn);
  approx_ = value_.convert_to<double>();
}

FermatRational FermatRational::parse(const std::string& x, const std::string& y, const std::string& z,
                                     long long n) {
  if (n < 1 || n > 100000) throw UsageError("n must lie in [1, 100000]");
  return FermatRational(parse_positive(x, "x"), parse_positive(y, "y"), parse_positive(z, "z"),
                        static_cast<unsigned>(n));
}

std::string FermatRational::exact_string() const {
  BigInt den = boost::multiprecision::denominator(value_);
  std::string num = boost::multiprecision::numerator(value_).str();
  return den == 1 ? num : num + "/" + den.str();
}

}  // namespace jacobs
