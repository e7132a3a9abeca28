#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace twofront {

// Below this total density the ratio-dependent interaction terms are taken
// as exactly zero; both carry a vanishing numerator factor, so the vector
// field stays continuous at the origin.
inline constexpr double delta_ratio = 1e-12;

// The nine constants that define a coupled run. lambda: prey growth rate;
// b: capture rate; m: half-saturation ratio; d: predator diffusivity;
// c: conversion rate; mu, rho: front capacities of the prey and predator
// free boundaries; h0, g0: initial front radii.
struct ModelParams {
  double lambda = 0.0;
  double b = 0.0;
  double m = 0.0;
  double d = 0.0;
  double c = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  double h0 = 0.0;
  double g0 = 0.0;

  // Returns an error message if any field is nonpositive or h0 < g0.
  // The solver itself accepts degenerate values (mu = 0 pins a front,
  // b = 0 decouples the prey); this gate is for user-facing inputs.
  std::optional<std::string> validate() const;
};

// Initial density profiles sampled on uniform grids over [0, h0] and
// [0, g0]. Both must be positive in the interior, end exactly at zero,
// and be flat at x = 0 to within the sampling resolution.
struct InitialData {
  std::vector<double> u0;
  std::vector<double> v0;

  std::optional<std::string> validate() const;
};

// State of the coupled system at one instant. u lives on the normalized
// prey grid (node i is x = i/(n-1) * h), v on the predator grid likewise.
// A single-species state leaves v empty and g at zero.
struct SimState {
  double t = 0.0;
  double h = 0.0;
  double g = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

struct ReactionRates {
  double prey = 0.0;
  double pred = 0.0;
};

// Pointwise logistic brackets around the true reaction rates:
// prey_lo = max{0, lambda - b/m}u - u^2, prey_hi = lambda*u - u^2,
// pred_lo = v - v^2, pred_hi = (1+c)v - v^2.
struct RateBrackets {
  double prey_lo = 0.0;
  double prey_hi = 0.0;
  double pred_lo = 0.0;
  double pred_hi = 0.0;
};

// Global bounds on the solution and the front speeds, computable from the
// parameters and initial data alone. M1 bounds u, M2 bounds v, M3 bounds
// h'(t), M4 bounds g'(t).
struct AprioriBounds {
  double M1 = 0.0;
  double M2 = 0.0;
  double M3 = 0.0;
  double M4 = 0.0;
};

// Reaction rates at a single point. Total on the nonnegative quadrant.
ReactionRates reaction_terms(double u_val, double v_val,
                             const ModelParams& p);

RateBrackets sandwich_rates(double u_val, double v_val, const ModelParams& p);

// M1 = max{lambda, max u0}; M2 = max{1+c, max v0};
// M3 = 2*mu * max{M1*sqrt(lambda/2), -min u0'};
// M4 = 2*rho * max{M2*sqrt((1+c)/(2d)), -min v0'}.
// The profile slopes are one-sided finite differences on the given grids.
AprioriBounds apriori_bounds(const ModelParams& p, const InitialData& init);

// amplitude * cos(pi*x / (2*radius)) sampled on n uniform nodes; the last
// sample is set to exactly zero.
std::vector<double> cosine_profile(double amplitude, std::size_t n);

InitialData cosine_initial_data(double u_amplitude, std::size_t n_u,
                                double v_amplitude, std::size_t n_v);

}  // namespace twofront
