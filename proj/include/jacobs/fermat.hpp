#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jacobs {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// (x^n + y^n) / z^n in exact arithmetic.
class FermatRational {
 public:
  FermatRational(BigInt x, BigInt y, BigInt z, unsigned n);
  // Parses decimal integers; UsageError on malformed or non-positive input.
  static FermatRational parse(const std::string& x, const std::string& y, const std::string& z,
                              long long n);

  const BigInt& x() const { return x_; }
  const BigInt& y() const { return y_; }
  const BigInt& z() const { return z_; }
  unsigned n() const { return n_; }

  const BigRational& value() const { return value_; }
  double approx() const { return approx_; }
  // x^n + y^n == z^n, decided on integers.
  bool equals_one() const { return equals_one_; }
  // n >= 3; stored, not enforced.
  bool fermat_class() const { return n_ >= 3; }

  std::string exact_string() const;

 private:
  BigInt x_, y_, z_;
  unsigned n_;
  BigRational value_;
  double approx_;
  bool equals_one_;
};

}  // namespace jacobs
