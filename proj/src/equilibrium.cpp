#include "twofront/equilibrium.hpp"

#include <cmath>

#include "twofront/errors.hpp"

namespace twofront {

namespace {

// Factor-form residuals (the growth factors, not the full rates).
void residuals(const ModelParams& p, double u, double v, double& f1,
               double& f2) {
  const double den = u + p.m * v;
  f1 = p.lambda - u - p.b * v / den;
  f2 = 1.0 - v + p.c * u / den;
}

}  // namespace

Equilibrium closed_form_equilibrium(const ModelParams& p) {
  Equilibrium eq;
  const double excess = p.m * p.lambda - p.b;
  if (!(excess > 0.0) || !(excess < p.b / p.c)) {
    return eq;  // regime_ok stays false
  }
  eq.regime_ok = true;
  const double bcm2 = p.b + p.c * p.m * p.m;
  eq.A = p.lambda * (2.0 * p.c * p.m * p.m + p.b) -
         p.m * p.b * (1.0 + 2.0 * p.c);
  eq.Delta1 = eq.A * eq.A +
              4.0 * bcm2 * (p.b * (1.0 + p.c) - p.m * p.c * p.lambda) * excess;
  if (eq.Delta1 < 0.0) {
    throw NegativeDiscriminantError(
        "equilibrium discriminant negative inside the coexistence regime");
  }
  eq.u_star = (eq.A + std::sqrt(eq.Delta1)) / (2.0 * bcm2);
  eq.v_star = eq.u_star * (p.lambda - eq.u_star) /
              (p.b - p.m * (p.lambda - eq.u_star));
  residuals(p, eq.u_star, eq.v_star, eq.residual_prey, eq.residual_pred);
  return eq;
}

std::pair<double, double> newton_equilibrium(const ModelParams& p,
                                             std::pair<double, double> guess) {
  double u = guess.first;
  double v = guess.second;
  if (!(u > 0.0) || !(v > 0.0)) {
    throw ValidationError("newton_equilibrium guess must be positive");
  }
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 100;

  double f1, f2;
  residuals(p, u, v, f1, f2);
  for (int it = 0; it < kMaxIter; ++it) {
    double norm = std::max(std::abs(f1), std::abs(f2));
    if (norm < kTol) return {u, v};

    const double den = u + p.m * v;
    const double den2 = den * den;
    const double a11 = -1.0 + p.b * v / den2;
    const double a12 = -p.b * u / den2;
    const double a21 = p.c * p.m * v / den2;
    const double a22 = -1.0 - p.c * p.m * u / den2;
    const double det = a11 * a22 - a12 * a21;
    const double scale = std::abs(a11 * a22) + std::abs(a12 * a21);
    if (std::abs(det) <= 1e-14 * scale) {
      throw SingularJacobianError("equilibrium Jacobian is singular");
    }
    const double du = (-f1 * a22 + f2 * a12) / det;
    const double dv = (-a11 * f2 + a21 * f1) / det;

    // Backtrack: stay in the positive quadrant and require a residual
    // decrease.
    double alpha = 1.0;
    double nu = u, nv = v, nf1 = f1, nf2 = f2;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      nu = u + alpha * du;
      nv = v + alpha * dv;
      if (nu > 0.0 && nv > 0.0) {
        residuals(p, nu, nv, nf1, nf2);
        if (std::max(std::abs(nf1), std::abs(nf2)) <
            (1.0 - 1e-4 * alpha) * norm) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      throw NoConvergenceError(
          "newton_equilibrium stalled: no acceptable damped step");
    }
    u = nu;
    v = nv;
    f1 = nf1;
    f2 = nf2;
  }
  throw NoConvergenceError("newton_equilibrium: iteration budget exhausted");
}

}  // namespace twofront
