#pragma once

#include "jacobs/moments.hpp"
#include "jacobs/table.hpp"

#include <vector>

namespace jacobs::ladder {

enum class Mode { exact, asymptotic };

struct LadderConfig {
  Mode mode = Mode::exact;
  double solver_tol = 1e-10;  // relative
  double T0 = 200;
  int max_iterations = 100;
  int k_cap = 20;
};

void validate(const LadderConfig& cfg);

// F(u) = u ln u + (c - ln 2pi) u and F'(u) = ln u + 1 + c - ln 2pi.
double defining_map(double u);
double defining_map_derivative(double u);

// J(T) as used by the ladder: the cached quadrature (exact) or T ln T - (1 + ln 2pi - 2c) T.
double ladder_J(double T, const LadderConfig& cfg, moments::MomentCache& cache);

// phi_1(T): the root u < T of F(u) = J(T).
double ladder_value(double T, const LadderConfig& cfg, moments::MomentCache& cache);
// The root x > T of J(x) = F(T).
double ladder_inverse(double T, const LadderConfig& cfg, moments::MomentCache& cache);

struct ReverseIterationSequence {
  double base = 0;
  std::vector<double> iterates;  // iterates[0] = base
  int k() const { return static_cast<int>(iterates.size()) - 1; }
};

// Solver failures are rethrown with the failing rank in the message.
ReverseIterationSequence reverse_iterations(double T, int k, const LadderConfig& cfg,
                                            moments::MomentCache& cache);
// Re-checks ordering and the phi_1 roundtrip; throws SolverError naming the rank.
void check_sequence(const ReverseIterationSequence& seq, const LadderConfig& cfg,
                    moments::MomentCache& cache);

// [t, phi_1(t), ..., phi_1^k(t)]; RangeError names the rank that drops below T0.
std::vector<double> forward_iterations(double t, int k, const LadderConfig& cfg,
                                       moments::MomentCache& cache);

// Columns r, T^(r-1), T^r, gap, (1-c)pi(Tr), ratio, gap_ratio.
Table spacing_report(const ReverseIterationSequence& seq);

struct IncrementReport {
  // Columns r, T^(r-1), T^r, increment, (1-c)T^(r-1), ratio, increment_ratio, err.
  Table table;
  double sum_increments = 0;
  double full_integral = 0;
  double partition_gap = 0;
  double partition_tol = 0;
  bool partition_holds = false;
};

IncrementReport increment_energy_report(const ReverseIterationSequence& seq,
                                        moments::MomentCache& cache);

}  // namespace jacobs::ladder
