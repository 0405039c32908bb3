#pragma once

#include "jacobs/fermat.hpp"
#include "jacobs/ladder.hpp"
#include "jacobs/moments.hpp"
#include "jacobs/table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jacobs::functionals {

using ladder::LadderConfig;
using moments::MomentCache;

struct RatioInteraction {
  int r = 0;
  double sigma = 0;
  double T_prev = 0;  // T^(r-1)
  double T_r = 0;     // T^r
  double line = 0;    // integral of |zeta(1/2+it)|^2 over [T^(r-1), T^r]
  double strip = 0;   // integral of |zeta(sigma+it)|^2 over the same range
  double ratio = 0;
  double reference = 0;  // ln(T^(r-1)) / zeta(2 sigma)
  double difference() const { return ratio - reference; }
};

RatioInteraction ratio_interaction(double T, int r, double sigma, const LadderConfig& cfg,
                                   MomentCache& cache);

enum class Kind { hli, ingham };
const char* kind_name(Kind k);

struct FunctionalEstimate {
  Kind kind = Kind::hli;
  double x = 0;
  double sigma = 0;
  double tau = 0;
  double T = 0;
  double T1 = 0;
  double base_moment = 0;  // second moment over [1,T] (hli) or fourth moment (ingham)
  double strip = 0;        // over [T, T^1]
  double line = 0;         // over [T, T^1]
  double raw_value = 0;
  double target = 0;
  double deviation = 0;  // raw_value - target
  long long cache_hits = 0;
};

// T = x tau / zeta(2 sigma).
FunctionalEstimate hli_crossbred(double x, double sigma, double tau, const LadderConfig& cfg,
                                 MomentCache& cache);
// T = 2 pi^2 x tau / zeta(2 sigma)^4.
FunctionalEstimate ingham_crossbred(double x, double sigma, double tau, const LadderConfig& cfg,
                                    MomentCache& cache);
FunctionalEstimate crossbred(Kind kind, double x, double sigma, double tau, const LadderConfig& cfg,
                             MomentCache& cache);
// Base point T the functional uses for (x, sigma, tau).
double crossbred_base(Kind kind, double x, double sigma, double tau, const sf::ZetaConfig& zcfg);

// Heuristic only: compares a finite-tau estimate with 1 using an empirical band.
struct FermatVerdict {
  FunctionalEstimate estimate;
  std::string exact_value;
  bool exact_equals_one = false;
  bool fermat_class = false;
  double band = 0;  // half-width around 1
  bool distinguishable = false;
  std::string verdict;
};

FermatVerdict fermat_condition(Kind kind, const FermatRational& fr, double sigma, double tau,
                               double band, const LadderConfig& cfg, MomentCache& cache);

struct Determinant {
  double T = 0, T1 = 0, sigma = 0;
  double line_ladder = 0;   // over [T, T^1], sigma = 1/2
  double strip_ladder = 0;  // over [T, T^1], sigma
  double line_base = 0;     // over [1, T], sigma = 1/2
  double strip_base = 0;    // over [1, T], sigma
  double lhs = 0;
  double rhs = 0;
  double ratio() const { return lhs / rhs; }
};

Determinant determinant_interaction(double T, double sigma, const LadderConfig& cfg,
                                    MomentCache& cache);

struct SweepRow {
  double tau = 0;
  std::optional<FunctionalEstimate> estimate;
  std::string error_kind;
  std::string error;
};

struct ConvergenceTable {
  Kind kind = Kind::hli;
  double x = 0;
  double sigma = 0;
  std::vector<SweepRow> rows;
  // |deviation| of the last successful row <= that of the first.
  bool trend = false;

  Table to_table() const;
};

// Row failures are recorded in the row, the sweep continues.
ConvergenceTable convergence_sweep(Kind kind, double x, double sigma, const std::vector<double>& taus,
                                   const LadderConfig& cfg, MomentCache& cache);

}  // namespace jacobs::functionals
