#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twofront/kernels.hpp"
#include "twofront/model.hpp"

namespace twofront {

// Densities may undershoot zero by at most a few of these before the run
// is considered unhealthy; clamping below -10x this value is logged.
inline constexpr double solver_tolerance = 1e-9;

// Relative slack applied to the a-priori bounds when checking them against
// a discrete trajectory.
inline constexpr double bounds_slack = 0.01;

struct SolverConfig {
  std::size_t n_u = 256;        // grid points on the prey domain
  std::size_t n_v = 256;        // grid points on the predator domain
  double dt_init = 1e-3;        // time step before front-CFL reduction
  double t_end = 50.0;
  double cfl_front = 0.4;       // max front motion per step, in cells
  double snapshot_every = 5.0;  // snapshot cadence in time units
  double vanish_eps = 1e-3;     // density threshold for vanishing
  double growth_window = 10.0;  // tail window for classification
  Backend backend = Backend::serial;

  std::optional<std::string> validate() const;
};

struct InvariantViolation {
  double t = 0.0;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
};

// Everything a run records. Series are sampled at every accepted step,
// index-aligned with times. A single-species run fills the predator
// columns with zeros and leaves snapshot v profiles empty.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> h_series;
  std::vector<double> g_series;
  std::vector<double> umax_series;
  std::vector<double> vmax_series;
  std::vector<double> u0_series;
  std::vector<double> v0_series;
  std::vector<double> h_speed_series;
  std::vector<double> g_speed_series;
  std::vector<SimState> snapshots;
  std::vector<InvariantViolation> violations;
  AprioriBounds bounds;
  bool coupled = true;
  std::size_t deep_clamps_u = 0;  // clamps below -10 * solver_tolerance
  std::size_t deep_clamps_v = 0;
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
};

// One accepted time step of the front-fixed coupled system: implicit
// diffusion, explicit advection and reaction, explicit front motion from
// the Stefan conditions with second-order boundary gradients. dt starts
// at cfg.dt_init and halves (at most 20 times, then StepRejectedError)
// until both fronts move at most cfg.cfl_front cells. Throws
// NonFiniteStateError if the state degenerates.
SimState step(const SimState& state, const ModelParams& p,
              const SolverConfig& cfg);

// Full evolution from t = 0 to cfg.t_end. Checks the a-priori bounds at
// every sample (with bounds_slack) and logs violations rather than
// throwing. init profiles must match cfg.n_u / cfg.n_v.
Trajectory run(const ModelParams& p, const InitialData& init,
               const SolverConfig& cfg);

// Same scheme restricted to one species with reaction w(theta - w),
// diffusivity d, front capacity beta, initial radius s0 and profile w0
// (w0.size() is the grid size; at least 64 nodes).
Trajectory run_single_species(double theta, double d, double beta, double s0,
                              std::span<const double> w0,
                              const SolverConfig& cfg);

}  // namespace twofront
