#include "twofront/semiwave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "twofront/errors.hpp"

namespace twofront {

namespace {

namespace odeint = boost::numeric::odeint;

using Phase = std::array<double, 2>;  // (q, q')

enum class Verdict { too_small, too_large, ambiguous };

constexpr double kBandRel = 1e-9;      // classification band around theta
constexpr double kProfileRel = 1e-7;   // profile recording stops this close
constexpr int kMaxHorizonDoublings = 3;

// Integrates the phase plane for one trial speed and reports which side of
// the unique connecting speed it falls on.
class TrialIntegrator {
 public:
  TrialIntegrator(double d, double theta, double beta, double atol,
                  double rtol)
      : d_(d), theta_(theta), beta_(beta), atol_(atol), rtol_(rtol) {}

  Verdict classify(double c, double y_max) const {
    auto sys = [this, c](const Phase& x, Phase& dx, double) {
      dx[0] = x[1];
      dx[1] = (c * x[1] - x[0] * (theta_ - x[0])) / d_;
    };
    auto stepper = odeint::make_controlled(
        atol_, rtol_, odeint::runge_kutta_cash_karp54<Phase>());
    Phase x{0.0, c / beta_};
    double y = 0.0;
    double dy = y_max * 1e-4;
    const double hi = theta_ * (1.0 + kBandRel);
    const double lo = theta_ * (1.0 - kBandRel);
    while (y < y_max) {
      dy = std::min(dy, y_max - y);
      if (stepper.try_step(sys, x, y, dy) == odeint::fail) continue;
      if (x[0] > hi) return Verdict::too_large;
      if (x[1] < 0.0 && x[0] < lo) return Verdict::too_small;
    }
    return Verdict::ambiguous;
  }

  // Re-integrates at the accepted speed, keeping the rising part of the
  // trajectory as the wave profile.
  void record_profile(double c, double y_max, SemiWaveSolution& out) const {
    auto sys = [this, c](const Phase& x, Phase& dx, double) {
      dx[0] = x[1];
      dx[1] = (c * x[1] - x[0] * (theta_ - x[0])) / d_;
    };
    auto stepper = odeint::make_controlled(
        atol_, rtol_, odeint::runge_kutta_cash_karp54<Phase>());
    Phase x{0.0, c / beta_};
    double y = 0.0;
    double dy = y_max / 4096.0;
    const double dy_cap = y_max / 1024.0;
    out.y.push_back(0.0);
    out.q.push_back(0.0);
    const double stop_at = theta_ * (1.0 - kProfileRel);
    while (y < y_max) {
      dy = std::min({dy, dy_cap, y_max - y});
      if (stepper.try_step(sys, x, y, dy) == odeint::fail) continue;
      if (x[0] <= out.q.back() || x[0] > theta_) break;
      out.y.push_back(y);
      out.q.push_back(x[0]);
      if (x[0] >= stop_at || x[1] <= 0.0) break;
    }
    out.y_max = out.y.back();
    out.residual = std::abs(out.q.back() - theta_);
  }

 private:
  double d_, theta_, beta_, atol_, rtol_;
};

}  // namespace

SemiWaveSolution solve_semiwave(const SemiWaveQuery& query, double rel_tol) {
  if (!(query.beta > 0.0) || !(query.d > 0.0) || !(query.theta > 0.0)) {
    throw ValidationError("semi-wave parameters must be positive");
  }
  if (!(rel_tol > 1e-14) || !(rel_tol < 1e-2)) {
    throw ValidationError("semi-wave tolerance must lie in (1e-14, 1e-2)");
  }

  const double c_max = 2.0 * std::sqrt(query.theta * query.d);
  const double integ_tol = std::max(rel_tol * 1e-2, 1e-13);
  const TrialIntegrator integ(query.d, query.theta, query.beta,
                              integ_tol * query.theta, integ_tol);

  double y_max = 50.0 * std::sqrt(query.d / query.theta);
  int doublings = 0;
  auto classify = [&](double c) {
    for (;;) {
      const Verdict v = integ.classify(c, y_max);
      if (v != Verdict::ambiguous || doublings >= kMaxHorizonDoublings) {
        return v;
      }
      y_max *= 2.0;
      ++doublings;
    }
  };

  double lo = 1e-9 * c_max;
  double hi = c_max * (1.0 - 1e-9);
  if (classify(lo) != Verdict::too_small ||
      classify(hi) != Verdict::too_large) {
    throw NoBracketError(
        "semi-wave shooting could not classify the speed interval "
        "endpoints; integration horizon exhausted");
  }

  const double eps_floor =
      std::numeric_limits<double>::epsilon() * std::sqrt(query.theta * query.d);
  while (hi - lo > rel_tol * hi && hi - lo > eps_floor) {
    const double mid = 0.5 * (lo + hi);
    switch (classify(mid)) {
      case Verdict::too_small:
        lo = mid;
        break;
      case Verdict::too_large:
        hi = mid;
        break;
      case Verdict::ambiguous:
        // The trajectory tracked the connection for the whole (maximally
        // grown) horizon: mid is the answer to integration resolution.
        lo = hi = mid;
        break;
    }
  }

  SemiWaveSolution out;
  out.c = 0.5 * (lo + hi);
  out.theta = query.theta;
  integ.record_profile(out.c, y_max, out);
  return out;
}

MonotonicityReport speed_monotonicity_check(std::span<const double> betas,
                                            std::span<const double> thetas,
                                            double d, double rel_tol) {
  std::vector<double> bs(betas.begin(), betas.end());
  std::vector<double> ts(thetas.begin(), thetas.end());
  std::sort(bs.begin(), bs.end());
  std::sort(ts.begin(), ts.end());

  const std::size_t nb = bs.size();
  const std::size_t nt = ts.size();
  std::vector<double> c(nb * nt);
  double c_peak = 0.0;
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      c[i * nt + j] = solve_semiwave({bs[i], d, ts[j]}, rel_tol).c;
      c_peak = std::max(c_peak, c[i * nt + j]);
    }
  }

  MonotonicityReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      if (i + 1 < nb) {
        rep.max_violation =
            std::max(rep.max_violation, c[i * nt + j] - c[(i + 1) * nt + j]);
        ++rep.n_checked;
      }
      if (j + 1 < nt) {
        rep.max_violation =
            std::max(rep.max_violation, c[i * nt + j] - c[i * nt + j + 1]);
        ++rep.n_checked;
      }
    }
  }
  if (rep.n_checked == 0) rep.max_violation = 0.0;
  rep.pass = rep.max_violation <= 10.0 * rel_tol * c_peak;
  return rep;
}

double profile_wave(const SemiWaveSolution& sol, double x, double front) {
  if (x > front) {
    throw std::domain_error("profile_wave: position lies beyond the front");
  }
  const double s = front - x;
  if (s >= sol.y_max) return sol.theta;
  const auto it = std::upper_bound(sol.y.begin(), sol.y.end(), s);
  if (it == sol.y.begin()) return sol.q.front();
  const std::size_t k = static_cast<std::size_t>(it - sol.y.begin());
  if (k >= sol.y.size()) return sol.q.back();
  const double f = (s - sol.y[k - 1]) / (sol.y[k] - sol.y[k - 1]);
  return sol.q[k - 1] + f * (sol.q[k] - sol.q[k - 1]);
}

}  // namespace twofront
