#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twofront {

// Inputs for the semi-wave boundary value problem
//   d q'' - c q' + q (theta - q) = 0,  q(0) = 0, q'(0) = c/beta,
//   q(+inf) = theta,
// whose unique speed c lies in (0, 2 sqrt(theta d)).
struct SemiWaveQuery {
  double beta = 0.0;   // front capacity
  double d = 0.0;      // diffusivity
  double theta = 0.0;  // carrying capacity
};

// Speed and monotone profile of the semi-wave. The profile is sampled at
// the integrator's own (increasing) nodes up to y_max; past y_max the wave
// is flat at theta. residual records |q(y_max) - theta|.
struct SemiWaveSolution {
  double c = 0.0;
  std::vector<double> y;
  std::vector<double> q;
  double y_max = 0.0;
  double residual = 0.0;
  double theta = 0.0;
};

// Shooting in c over (0, 2 sqrt(theta d)). A trial whose trajectory rises
// past theta carries too much speed (new upper bound); a trial that turns
// around below theta carries too little (new lower bound). Bisection runs
// until the bracket shrinks to rel_tol. The integration horizon doubles,
// at most three times, whenever a trajectory reaches it unclassified.
// Throws ValidationError on bad inputs, NoBracketError if the endpoints
// of the speed interval fail to classify even at the largest horizon.
SemiWaveSolution solve_semiwave(const SemiWaveQuery& query,
                                double rel_tol = 1e-10);

struct MonotonicityReport {
  double max_violation = 0.0;  // largest c[k] - c[k+1] along either axis
  std::size_t n_checked = 0;   // ordered pairs examined
  bool pass = false;
};

// Solves the semi-wave on the (beta, theta) grid at fixed d and checks
// that c strictly increases along both axes.
MonotonicityReport speed_monotonicity_check(std::span<const double> betas,
                                            std::span<const double> thetas,
                                            double d, double rel_tol = 1e-10);

// Evaluates the wave density at position x when the front sits at `front`:
// q(front - x), interpolated from the stored samples, flat at theta beyond
// y_max. Throws std::domain_error when x > front.
double profile_wave(const SemiWaveSolution& sol, double x, double front);

}  // namespace twofront
