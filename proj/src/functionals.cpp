#include "jacobs/functionals.hpp"

#include "jacobs/constants.hpp"
#include "jacobs/errors.hpp"

#include <cmath>
#include <sstream>

namespace jacobs::functionals {

namespace {

void require_strip_sigma(double sigma, const MomentCache& cache) {
  const auto& z = cache.settings().zeta;
  if (!std::isfinite(sigma) || sigma == 0.5 || !sf::admissible_sigma(sigma, z)) {
    std::ostringstream os;
    os << "sigma=" << sigma << " must be >= 1/2 + " << z.eps_min;
    throw DomainError(os.str());
  }
}

moments::MomentResult interval(double a, double b, double sigma, MomentCache& cache) {
  return moments::second_moment(a, b, sigma, cache);
}

}  // namespace

const char* kind_name(Kind k) { return k == Kind::hli ? "hli" : "ingham"; }

RatioInteraction ratio_interaction(double T, int r, double sigma, const LadderConfig& cfg,
                                   MomentCache& cache) {
  require_strip_sigma(sigma, cache);
  if (r < 1 || r > cfg.k_cap) throw DomainError("rank r outside [1, k cap]");
  ladder::ReverseIterationSequence seq = ladder::reverse_iterations(T, r, cfg, cache);
  RatioInteraction out;
  out.r = r;
  out.sigma = sigma;
  out.T_prev = seq.iterates[r - 1];
  out.T_r = seq.iterates[r];
  out.line = interval(out.T_prev, out.T_r, 0.5, cache).value;
  out.strip = interval(out.T_prev, out.T_r, sigma, cache).value;
  out.ratio = out.line / out.strip;
  out.reference = std::log(out.T_prev) / sf::zeta_two_sigma(sigma, cache.settings().zeta);
  return out;
}

double crossbred_base(Kind kind, double x, double sigma, double tau, const sf::ZetaConfig& zcfg) {
  double z = sf::zeta_two_sigma(sigma, zcfg);
  if (kind == Kind::hli) return x * tau / z;
  return static_cast<double>(2 * kPi * kPi) * x * tau / (z * z * z * z);
}

FunctionalEstimate crossbred(Kind kind, double x, double sigma, double tau, const LadderConfig& cfg,
                             MomentCache& cache) {
  if (!std::isfinite(x) || !(x > 0)) throw DomainError("x must be positive");
  if (!std::isfinite(tau) || !(tau > 0)) throw DomainError("tau must be positive");
  require_strip_sigma(sigma, cache);

  FunctionalEstimate e;
  e.kind = kind;
  e.x = x;
  e.sigma = sigma;
  e.tau = tau;
  e.target = x;
  e.T = crossbred_base(kind, x, sigma, tau, cache.settings().zeta);
  if (e.T < cfg.T0) {
    std::ostringstream os;
    os << "tau=" << tau << " too small: T=" << e.T << " is below T0=" << cfg.T0;
    throw RangeError(os.str());
  }
  e.T1 = ladder::ladder_inverse(e.T, cfg, cache);

  moments::MomentResult base =
      kind == Kind::hli ? moments::second_moment(1.0, e.T, 0.5, cache) : moments::fourth_moment(e.T, cache);
  moments::MomentResult strip = interval(e.T, e.T1, sigma, cache);
  moments::MomentResult line = interval(e.T, e.T1, 0.5, cache);
  e.base_moment = base.value;
  e.strip = strip.value;
  e.line = line.value;
  e.cache_hits = base.cache_hits + strip.cache_hits + line.cache_hits;

  long double q = static_cast<long double>(e.strip) / e.line;
  if (kind == Kind::hli) {
    e.raw_value = static_cast<double>(e.base_moment * q / tau);
  } else {
    long double q2 = q * q;
    e.raw_value = static_cast<double>(e.base_moment * q2 * q2 / tau);
  }
  e.deviation = e.raw_value - e.target;
  return e;
}

FunctionalEstimate hli_crossbred(double x, double sigma, double tau, const LadderConfig& cfg,
                                 MomentCache& cache) {
  return crossbred(Kind::hli, x, sigma, tau, cfg, cache);
}

FunctionalEstimate ingham_crossbred(double x, double sigma, double tau, const LadderConfig& cfg,
                                    MomentCache& cache) {
  return crossbred(Kind::ingham, x, sigma, tau, cfg, cache);
}

FermatVerdict fermat_condition(Kind kind, const FermatRational& fr, double sigma, double tau,
                               double band, const LadderConfig& cfg, MomentCache& cache) {
  if (!(band > 0)) throw DomainError("band half-width must be positive");
  FermatVerdict v;
  v.estimate = crossbred(kind, fr.approx(), sigma, tau, cfg, cache);
  v.exact_value = fr.exact_string();
  v.exact_equals_one = fr.equals_one();
  v.fermat_class = fr.fermat_class();
  v.band = band;
  v.distinguishable = std::abs(v.estimate.raw_value - 1.0) > band;
  if (v.distinguishable) {
    std::ostringstream os;
    os << "inconsistent with =1 at band " << band;
    v.verdict = os.str();
  } else {
    v.verdict = "consistent with =1";
  }
  return v;
}

Determinant determinant_interaction(double T, double sigma, const LadderConfig& cfg, MomentCache& cache) {
  require_strip_sigma(sigma, cache);
  Determinant d;
  d.T = T;
  d.sigma = sigma;
  d.T1 = ladder::ladder_inverse(T, cfg, cache);
  d.line_ladder = interval(T, d.T1, 0.5, cache).value;
  d.strip_ladder = interval(T, d.T1, sigma, cache).value;
  d.line_base = interval(1.0, T, 0.5, cache).value;
  d.strip_base = interval(1.0, T, sigma, cache).value;
  long double a = d.line_ladder, b = d.strip_ladder, c = d.line_base, e = d.strip_base;
  d.lhs = static_cast<double>(a * e - b * c);
  long double z = sf::zeta_two_sigma(sigma, cache.settings().zeta);
  d.rhs = static_cast<double>(constants().hli_linear / z * e * b);
  return d;
}

ConvergenceTable convergence_sweep(Kind kind, double x, double sigma, const std::vector<double>& taus,
                                   const LadderConfig& cfg, MomentCache& cache) {
  if (taus.empty()) throw UsageError("empty tau grid");
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (!(taus[i] > taus[i - 1])) throw UsageError("tau grid must be strictly increasing");

  ConvergenceTable out;
  out.kind = kind;
  out.x = x;
  out.sigma = sigma;
  for (double tau : taus) {
    SweepRow row;
    row.tau = tau;
    try {
      row.estimate = crossbred(kind, x, sigma, tau, cfg, cache);
    } catch (const Error& e) {
      row.error_kind = error_kind_name(e.kind());
      row.error = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  const FunctionalEstimate* first = nullptr;
  const FunctionalEstimate* last = nullptr;
  for (const auto& r : out.rows) {
    if (!r.estimate) continue;
    if (!first) first = &*r.estimate;
    last = &*r.estimate;
  }
  out.trend = first && std::abs(last->deviation) <= std::abs(first->deviation);
  return out;
}

Table ConvergenceTable::to_table() const {
  Table t;
  t.columns = {"tau", "T", "T^1", "base_moment", "strip", "line", "raw", "target", "deviation",
               "error_kind", "error"};
  for (const auto& r : rows) {
    if (r.estimate) {
      const auto& e = *r.estimate;
      t.add_row({e.tau, e.T, e.T1, e.base_moment, e.strip, e.line, e.raw_value, e.target, e.deviation,
                 Cell{}, Cell{}});
    } else {
      t.add_row({r.tau, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, x, Cell{}, r.error_kind, r.error});
    }
  }
  return t;
}

}  // namespace jacobs::functionals
