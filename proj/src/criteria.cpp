#include "twofront/criteria.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "twofront/diagnostics.hpp"
#include "twofront/errors.hpp"
#include "twofront/semiwave.hpp"

namespace twofront {

namespace {

constexpr double kSemiwaveTol = 1e-8;
constexpr int kMaxTendDoublings = 2;

SpeciesOutcome classify_probe(const SingleSpeciesProblem& prob, double beta,
                              const SolverConfig& cfg) {
  SolverConfig local = cfg;
  for (int attempt = 0; attempt <= kMaxTendDoublings; ++attempt) {
    const Trajectory traj = run_single_species(prob.theta, prob.d, beta,
                                               prob.s0, prob.w0, local);
    const SpeciesOutcome out =
        classify_single(traj, prob.theta, prob.d, beta, local);
    if (out != SpeciesOutcome::undecided) return out;
    local.t_end *= 2.0;
  }
  throw UndecidedError(
      "classification still undecided after doubling t_end twice at "
      "capacity " +
      std::to_string(beta));
}

}  // namespace

ThresholdReport thresholds(const ModelParams& p, std::optional<double> s) {
  ThresholdReport rep;
  const double half_pi = std::numbers::pi / 2.0;
  const double excess = p.m * p.lambda - p.b;
  if (excess > 0.0) {
    rep.prey_spread_radius = half_pi * std::sqrt(p.m / excess);
  }
  rep.prey_vanish_radius = half_pi * std::sqrt(1.0 / p.lambda);
  rep.pred_spread_radius = half_pi * std::sqrt(p.d);
  rep.pred_vanish_radius = half_pi * std::sqrt(p.d / (1.0 + p.c));

  if (s) {
    const double cap = std::sqrt(2.0 * p.lambda);
    rep.s_bar_exists = *s > 0.0 && *s < cap;
    if (rep.s_bar_exists) {
      rep.L_s = 2.0 * std::numbers::pi / std::sqrt(2.0 * p.lambda - *s * *s);
    }
  }

  rep.prey_extinction_regime = p.lambda * p.lambda + p.m * p.lambda < p.b;
  rep.c_prey_cap = solve_semiwave({p.mu, 1.0, p.lambda}, kSemiwaveTol).c;
  rep.c_pred_floor = solve_semiwave({p.rho, p.d, 1.0}, kSemiwaveTol).c;
  rep.F_membership = rep.c_prey_cap < rep.c_pred_floor;
  return rep;
}

CriticalCapacity find_critical_capacity(const SingleSpeciesProblem& prob,
                                        std::pair<double, double> bracket,
                                        int n_bisect,
                                        const SolverConfig& cfg) {
  double lo = bracket.first;
  double hi = bracket.second;
  if (!(lo > 0.0) || !(hi > lo)) {
    throw BadBracketError("capacity bracket must satisfy 0 < low < high");
  }
  if (classify_probe(prob, lo, cfg) != SpeciesOutcome::vanishing) {
    throw BadBracketError(
        "low capacity endpoint does not classify as vanishing");
  }
  if (classify_probe(prob, hi, cfg) != SpeciesOutcome::spreading) {
    throw BadBracketError(
        "high capacity endpoint does not classify as spreading");
  }

  CriticalCapacity out;
  for (int k = 0; k < n_bisect; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (classify_probe(prob, mid, cfg) == SpeciesOutcome::vanishing) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.lower = lo;
  out.upper = hi;
  return out;
}

SeparationReport check_separation(const ModelParams& p, double s,
                                  const Trajectory& traj) {
  SeparationReport rep;
  const double cap = std::sqrt(2.0 * p.lambda);
  if (!(s > 0.0) || s >= cap) {
    rep.detail = "not applicable: s outside (0, sqrt(2*lambda))";
    return rep;
  }
  rep.L_s = 2.0 * std::numbers::pi / std::sqrt(2.0 * p.lambda - s * s);
  if (!(p.h0 - p.g0 > rep.L_s)) {
    rep.detail = "not applicable: initial gap h0 - g0 does not exceed L_s";
    return rep;
  }
  rep.applicable = true;
  rep.pass = true;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const double needed = s * t + p.g0 + rep.L_s;
    if (traj.h_series[k] < needed || traj.h_series[k] <= traj.g_series[k]) {
      rep.pass = false;
      rep.first_violation_t = t;
      rep.detail = "h = " + std::to_string(traj.h_series[k]) +
                   " vs required " + std::to_string(needed) + ", g = " +
                   std::to_string(traj.g_series[k]);
      return rep;
    }
  }
  rep.detail = "gap maintained at every sample";
  return rep;
}

}  // namespace twofront
