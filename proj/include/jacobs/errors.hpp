#pragma once

#include <stdexcept>
#include <string>

namespace jacobs {

enum class ErrorKind {
  domain,
  precision,
  budget,
  solver,
  range,
  integrity,
  compatibility,
  usage,
  io
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// Requested tolerance is below what the working precision can deliver.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, double achievable)
      : Error(ErrorKind::precision, what), achievable_(achievable) {}
  double achievable() const noexcept { return achievable_; }

 private:
  double achievable_;
};

class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double partial, double err, long long evals)
      : Error(ErrorKind::budget, what), partial_(partial), err_(err), evals_(evals) {}
  double partial() const noexcept { return partial_; }
  double err_estimate() const noexcept { return err_; }
  long long n_evals() const noexcept { return evals_; }

 private:
  double partial_;
  double err_;
  long long evals_;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double lo, double hi, int iterations)
      : Error(ErrorKind::solver, what), lo_(lo), hi_(hi), iterations_(iterations) {}
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double lo_;
  double hi_;
  int iterations_;
};

class RangeError : public Error {
 public:
  RangeError(const std::string& what, int rank = -1)
      : Error(ErrorKind::range, what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ErrorKind::integrity, what) {}
};

class CompatibilityError : public Error {
 public:
  explicit CompatibilityError(const std::string& what)
      : Error(ErrorKind::compatibility, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace jacobs
