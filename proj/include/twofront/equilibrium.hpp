#pragma once

#include <utility>

#include "twofront/model.hpp"

namespace twofront {

// Coexistence equilibrium of the interior kinetics
//   lambda - u - b v/(u + m v) = 0
//   1 - v + c u/(u + m v)      = 0
// which has exactly one positive root when 0 < m*lambda - b < b/c.
struct Equilibrium {
  double u_star = 0.0;
  double v_star = 0.0;
  double A = 0.0;       // closed-form intermediate
  double Delta1 = 0.0;  // closed-form discriminant
  bool regime_ok = false;
  double residual_prey = 0.0;  // both factor-form residuals at (u*, v*)
  double residual_pred = 0.0;
};

// Closed form: A = lambda(2cm^2 + b) - mb(1 + 2c);
// Delta1 = A^2 + 4(b + cm^2)[b(1+c) - mc*lambda](m*lambda - b);
// u* = (A + sqrt(Delta1)) / (2(b + cm^2)); v* = u*(lambda-u*)/(b-m(lambda-u*)).
// Out of regime the flag is false and no values are produced. Throws
// NegativeDiscriminantError if Delta1 < 0 in-regime (internal
// inconsistency, cannot occur for valid inputs).
Equilibrium closed_form_equilibrium(const ModelParams& p);

// Independent damped-Newton solve of the same system, used to cross-check
// the closed form. Iterates to residual < 1e-12 (sup norm); throws
// NoConvergenceError after 100 iterations or SingularJacobianError.
std::pair<double, double> newton_equilibrium(const ModelParams& p,
                                             std::pair<double, double> guess);

}  // namespace twofront
