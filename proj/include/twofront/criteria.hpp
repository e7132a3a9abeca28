#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"

namespace twofront {

// Closed-form radii separating guaranteed spreading from possible
// vanishing, plus the regime flags that depend on semi-wave speeds.
struct ThresholdReport {
  // (pi/2) sqrt(m/(m lambda - b)); defined only when m*lambda > b.
  std::optional<double> prey_spread_radius;
  double prey_vanish_radius = 0.0;  // (pi/2) sqrt(1/lambda)
  double pred_spread_radius = 0.0;  // (pi/2) sqrt(d)
  double pred_vanish_radius = 0.0;  // (pi/2) sqrt(d/(1+c))
  // 2 pi / sqrt(2 lambda - s^2); defined when 0 < s < sqrt(2 lambda).
  std::optional<double> L_s;
  bool s_bar_exists = false;  // an admissible s was supplied
  bool prey_extinction_regime = false;  // lambda^2 + m*lambda < b
  bool F_membership = false;  // c(mu,1,lambda) < c(rho,d,1)
  double c_prey_cap = 0.0;    // c(mu,1,lambda)
  double c_pred_floor = 0.0;  // c(rho,d,1)
};

ThresholdReport thresholds(const ModelParams& p, std::optional<double> s);

// Logistic single-species setup whose critical front capacity is sought.
struct SingleSpeciesProblem {
  double theta = 0.0;
  double d = 0.0;
  double s0 = 0.0;
  std::vector<double> w0;
};

struct CriticalCapacity {
  double lower = 0.0;  // largest capacity observed to vanish
  double upper = 0.0;  // smallest capacity observed to spread
  int iterations = 0;
};

// Bisection on the capacity between a vanishing low endpoint and a
// spreading high endpoint; each probe is a full simulation classified by
// the conservative finite-time rules. An undecided probe retries with
// t_end doubled (at most twice), then throws UndecidedError. Throws
// BadBracketError if the endpoints do not classify as (vanish, spread).
CriticalCapacity find_critical_capacity(const SingleSpeciesProblem& prob,
                                        std::pair<double, double> bracket,
                                        int n_bisect,
                                        const SolverConfig& cfg);

struct SeparationReport {
  bool applicable = false;
  bool pass = false;
  double L_s = 0.0;
  std::optional<double> first_violation_t;
  std::string detail;
};

// Verifies h(t) >= s*t + g0 + L_s and h(t) > g(t) at every sample of a
// coupled trajectory. Not applicable when s >= sqrt(2 lambda) (L_s
// undefined) or when the initial gap h0 - g0 does not exceed L_s.
SeparationReport check_separation(const ModelParams& p, double s,
                                  const Trajectory& traj);

}  // namespace twofront
