#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"

namespace twofront {

// Tail-window least-squares fit front = value * t + H_est.
struct SpeedEstimate {
  double value = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r2 = 0.0;
  double H_est = 0.0;
};

// Fits the last fit_fraction of the time range (fit_fraction in (0, 0.5],
// so the window never starts before half of the run). Throws
// InsufficientDataError with fewer than 20 samples in the window.
SpeedEstimate estimate_speed(std::span<const double> times,
                             std::span<const double> front,
                             double fit_fraction);

enum class SpeciesOutcome { spreading, vanishing, undecided };

enum class Outcome {
  both_spread,
  prey_only,
  pred_only,
  both_vanish,
  undecided
};

struct Classification {
  Outcome outcome = Outcome::undecided;
  SpeciesOutcome prey = SpeciesOutcome::undecided;
  SpeciesOutcome pred = SpeciesOutcome::undecided;
  // Predicted longtime interior values for the classified case, when the
  // theory provides them.
  std::optional<double> u_limit;
  std::optional<double> v_limit;
  std::string note;
};

// Conservative finite-time classification of one front/density history:
// vanishing if the final peak density sits below vanish_eps and the front
// moved less than one cell over the trailing growth window; spreading if
// the windowed front speed exceeds half the semi-wave prediction;
// undecided otherwise.
SpeciesOutcome classify_species(std::span<const double> times,
                                std::span<const double> front,
                                std::span<const double> peak,
                                double predicted_speed, std::size_t n_grid,
                                const SolverConfig& cfg);

// Applies classify_species to both species of a coupled trajectory (the
// semi-wave predictions are solved internally) and attaches the predicted
// limits: coexistence equilibrium, (lambda, 0), (0, 1), or zeros.
Classification classify_outcome(const Trajectory& traj, const ModelParams& p,
                                const SolverConfig& cfg);

// Classification for a single-species trajectory with reaction
// w(theta - w), diffusivity d and capacity beta.
SpeciesOutcome classify_single(const Trajectory& traj, double theta, double d,
                               double beta, const SolverConfig& cfg);

// The closed-form speed scales of the large-capacity regime:
// c1 = 2 sqrt(lambda - b/m), c2 = 2 sqrt(lambda), c3 = 2 sqrt(d),
// c4 = 2 sqrt(d(1+c)), c0 = min{c1, c3}, kappa = 2 M2/(lambda - b/m),
// c5 = 2 sqrt(lambda - b kappa/(1 + m kappa)) when the radicand is
// positive. c1, c0, kappa, c5 need m*lambda > b.
struct SpeedConstants {
  bool defined = false;  // m*lambda > b
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c0 = 0.0;
  double kappa = 0.0;
  std::optional<double> c5;
  bool ordering_ok = false;
  std::string ordering_note;
};

// M2 comes from apriori_bounds of the run the constants will be used on.
SpeedConstants speed_constants(const ModelParams& p, double M2);

struct ClauseResult {
  std::string clause;
  bool applicable = false;
  bool pass = false;
  double target = 0.0;
  double measured = 0.0;
  double margin = 0.0;  // nonnegative means pass
};

struct RayRegionReport {
  std::vector<ClauseResult> clauses;
  bool all_applicable_pass = false;
};

// Evaluates the large-capacity ray statements on the final quarter of a
// coupled run, using its snapshots:
//  (a) densities vanish beyond the rays (c2+eps)t and (c4+eps)t;
//  (b) u >= lambda - b/m - tol on [0,(c1-eps)t], v >= 1 - tol on
//      [0,(c3-eps)t];
//  (c) when lambda < d <= 2 sqrt(lambda)+1: |v-1| <= tol on the band
//      ((c2+eps)t, (c3-eps)t);
//  (d) sup distance to the coexistence equilibrium on [0,(c0-eps)t]
//      shrinks between the first and last window snapshot.
// Clauses whose ray lies outside the actually reached domain are reported
// as not applicable rather than failed.
RayRegionReport ray_region_check(const Trajectory& traj, const ModelParams& p,
                                 const SpeedConstants& consts, double eps,
                                 double tol);

struct SpeedBoundsReport {
  SpeedEstimate h_fit;
  SpeedEstimate g_fit;
  double h_lo = 0.0, h_hi = 0.0;  // semi-wave bracket endpoints
  double g_lo = 0.0, g_hi = 0.0;
  double widen = 0.0;  // relative widening applied to the brackets
  bool h_ok = false, g_ok = false;
};

// Tail-fit speeds of both fronts against their semi-wave brackets
// [c(mu,1,lambda-b/m), c(mu,1,lambda)] and [c(rho,d,1), c(rho,d,1+c)],
// each widened by 5%. Without m*lambda > b the prey lower endpoint is 0.
SpeedBoundsReport speed_bounds_check(const Trajectory& traj,
                                     const ModelParams& p);

}  // namespace twofront
