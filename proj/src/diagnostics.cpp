#include "twofront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twofront/equilibrium.hpp"
#include "twofront/errors.hpp"
#include "twofront/semiwave.hpp"

namespace twofront {

namespace {

constexpr double kFitFraction = 0.4;     // tail portion for speed fits
constexpr double kBracketWiden = 0.05;   // criterion widening of brackets
constexpr double kSemiwaveTol = 1e-8;    // plenty for bracket endpoints

// Linear interpolation of a normalized profile at physical position x.
double sample_profile(const std::vector<double>& w, double front, double x) {
  if (w.empty() || front <= 0.0 || x >= front) return 0.0;
  const double y = std::max(0.0, x / front);
  const double t = y * static_cast<double>(w.size() - 1);
  const std::size_t j =
      std::min(static_cast<std::size_t>(t), w.size() - 2);
  const double f = t - static_cast<double>(j);
  return w[j] + f * (w[j + 1] - w[j]);
}

struct Extrema {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

// Min and max of a profile over the physical interval [a, b], scanning the
// grid nodes inside and the interval endpoints.
Extrema profile_extrema(const std::vector<double>& w, double front, double a,
                        double b) {
  Extrema e;
  for (double x : {a, b}) {
    const double val = sample_profile(w, front, x);
    e.lo = std::min(e.lo, val);
    e.hi = std::max(e.hi, val);
  }
  if (!w.empty() && front > 0.0) {
    const double dx = front / static_cast<double>(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double x = static_cast<double>(i) * dx;
      if (x > a && x < b) {
        e.lo = std::min(e.lo, w[i]);
        e.hi = std::max(e.hi, w[i]);
      }
    }
  }
  return e;
}

}  // namespace

SpeedEstimate estimate_speed(std::span<const double> times,
                             std::span<const double> front,
                             double fit_fraction) {
  if (!(fit_fraction > 0.0) || fit_fraction > 0.5) {
    throw ValidationError("fit_fraction must lie in (0, 0.5]");
  }
  if (times.size() != front.size() || times.empty()) {
    throw InsufficientDataError("speed fit needs matching nonempty series");
  }
  SpeedEstimate est;
  est.t_hi = times.back();
  est.t_lo = est.t_hi * (1.0 - fit_fraction);

  std::size_t first = 0;
  while (first < times.size() && times[first] < est.t_lo) ++first;
  const std::size_t count = times.size() - first;
  if (count < 20) {
    throw InsufficientDataError("fewer than 20 samples in the fit window");
  }

  double mt = 0.0, mx = 0.0;
  for (std::size_t i = first; i < times.size(); ++i) {
    mt += times[i];
    mx += front[i];
  }
  mt /= static_cast<double>(count);
  mx /= static_cast<double>(count);
  double stt = 0.0, stx = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < times.size(); ++i) {
    const double dt = times[i] - mt;
    const double dx = front[i] - mx;
    stt += dt * dt;
    stx += dt * dx;
    sxx += dx * dx;
  }
  est.value = stx / stt;
  est.H_est = mx - est.value * mt;

  double ss_res = 0.0;
  for (std::size_t i = first; i < times.size(); ++i) {
    const double r = front[i] - (est.value * times[i] + est.H_est);
    ss_res += r * r;
  }
  est.r2 = sxx > 0.0 ? 1.0 - ss_res / sxx : 1.0;
  return est;
}

SpeciesOutcome classify_species(std::span<const double> times,
                                std::span<const double> front,
                                std::span<const double> peak,
                                double predicted_speed, std::size_t n_grid,
                                const SolverConfig& cfg) {
  if (times.size() < 2) return SpeciesOutcome::undecided;
  const double t_end = times.back();
  const double t_from = t_end - cfg.growth_window;
  std::size_t j = 0;
  while (j + 1 < times.size() && times[j] < t_from) ++j;
  const double span_t = t_end - times[j];
  if (!(span_t > 0.0)) return SpeciesOutcome::undecided;

  const double displacement = front.back() - front[j];
  const double cell = front.back() / static_cast<double>(n_grid - 1);
  if (peak.back() < cfg.vanish_eps && displacement < cell) {
    return SpeciesOutcome::vanishing;
  }
  if (displacement / span_t > 0.5 * predicted_speed) {
    return SpeciesOutcome::spreading;
  }
  return SpeciesOutcome::undecided;
}

Classification classify_outcome(const Trajectory& traj, const ModelParams& p,
                                const SolverConfig& cfg) {
  Classification cl;
  const double c_prey = solve_semiwave({p.mu, 1.0, p.lambda}, kSemiwaveTol).c;
  const double c_pred =
      solve_semiwave({p.rho, p.d, 1.0 + p.c}, kSemiwaveTol).c;
  cl.prey = classify_species(traj.times, traj.h_series, traj.umax_series,
                             c_prey, cfg.n_u, cfg);
  cl.pred = classify_species(traj.times, traj.g_series, traj.vmax_series,
                             c_pred, cfg.n_v, cfg);

  using SO = SpeciesOutcome;
  if (cl.prey == SO::undecided || cl.pred == SO::undecided) {
    cl.outcome = Outcome::undecided;
    return cl;
  }
  if (cl.prey == SO::spreading && cl.pred == SO::spreading) {
    cl.outcome = Outcome::both_spread;
    const Equilibrium eq = closed_form_equilibrium(p);
    if (eq.regime_ok) {
      cl.u_limit = eq.u_star;
      cl.v_limit = eq.v_star;
    } else {
      cl.note = "no coexistence equilibrium in this parameter regime";
    }
  } else if (cl.prey == SO::spreading) {
    cl.outcome = Outcome::prey_only;
    cl.u_limit = p.lambda;
    cl.v_limit = 0.0;
  } else if (cl.pred == SO::spreading) {
    cl.outcome = Outcome::pred_only;
    cl.u_limit = 0.0;
    cl.v_limit = 1.0;
  } else {
    cl.outcome = Outcome::both_vanish;
    cl.u_limit = 0.0;
    cl.v_limit = 0.0;
  }
  return cl;
}

SpeciesOutcome classify_single(const Trajectory& traj, double theta, double d,
                               double beta, const SolverConfig& cfg) {
  const double c = solve_semiwave({beta, d, theta}, kSemiwaveTol).c;
  const std::size_t n = traj.snapshots.back().u.size();
  return classify_species(traj.times, traj.h_series, traj.umax_series, c, n,
                          cfg);
}

SpeedConstants speed_constants(const ModelParams& p, double M2) {
  SpeedConstants sc;
  sc.c2 = 2.0 * std::sqrt(p.lambda);
  sc.c3 = 2.0 * std::sqrt(p.d);
  sc.c4 = 2.0 * std::sqrt(p.d * (1.0 + p.c));
  const double excess = p.lambda - p.b / p.m;
  sc.defined = excess > 0.0;
  if (!sc.defined) {
    sc.ordering_note = "m*lambda <= b: prey floor growth is nonpositive";
    return sc;
  }
  sc.c1 = 2.0 * std::sqrt(excess);
  sc.c0 = std::min(sc.c1, sc.c3);
  sc.kappa = 2.0 * M2 / excess;
  const double floor5 = p.lambda - p.b * sc.kappa / (1.0 + p.m * sc.kappa);
  if (floor5 > 0.0) sc.c5 = 2.0 * std::sqrt(floor5);

  sc.ordering_ok = sc.c1 <= sc.c2 && sc.c3 <= sc.c4;
  if (p.d * (1.0 + p.c) < excess) {
    sc.ordering_ok = sc.ordering_ok && sc.c3 < sc.c4 && sc.c4 < sc.c1 &&
                     sc.c1 < sc.c2;
    if (!sc.ordering_ok) {
      sc.ordering_note = "slow-predator ordering c3<c4<c1<c2 failed";
    }
  }
  // The reduced predation floor lambda - b*kappa/(1+m*kappa) exceeds
  // lambda - b/m, so c5 dominates c1 whenever it exists.
  if (sc.c5 && *sc.c5 < sc.c1) {
    sc.ordering_ok = false;
    sc.ordering_note = "c5 < c1: inconsistent kappa floor";
  }
  return sc;
}

RayRegionReport ray_region_check(const Trajectory& traj, const ModelParams& p,
                                 const SpeedConstants& consts, double eps,
                                 double tol) {
  RayRegionReport rep;
  const double t_end = traj.times.back();
  const double t_from = 0.75 * t_end;

  std::vector<const SimState*> window;
  for (const auto& snap : traj.snapshots) {
    if (snap.t >= t_from && snap.t > 0.0) window.push_back(&snap);
  }

  // (a) emptiness beyond the fast rays.
  {
    ClauseResult r{"a_empty_beyond_fast_rays", !window.empty(), true, tol,
                   0.0, 0.0};
    for (const auto* s : window) {
      const double ray_u = (consts.c2 + eps) * s->t;
      const double ray_v = (consts.c4 + eps) * s->t;
      if (s->h > ray_u) {
        r.measured = std::max(
            r.measured, profile_extrema(s->u, s->h, ray_u, s->h).hi);
      }
      if (s->g > ray_v) {
        r.measured = std::max(
            r.measured, profile_extrema(s->v, s->g, ray_v, s->g).hi);
      }
    }
    r.pass = r.applicable && r.measured <= tol;
    r.margin = tol - r.measured;
    rep.clauses.push_back(r);
  }

  // (b) density floors on the slow rays.
  {
    ClauseResult r{"b_floor_on_slow_rays", consts.defined && !window.empty(),
                   false, 0.0, 0.0, 0.0};
    if (r.applicable) {
      const double floor_u = p.lambda - p.b / p.m;
      double min_u = std::numeric_limits<double>::infinity();
      double min_v = std::numeric_limits<double>::infinity();
      for (const auto* s : window) {
        const double ray_u = (consts.c1 - eps) * s->t;
        const double ray_v = (consts.c3 - eps) * s->t;
        if (ray_u <= 0.0 || ray_u > s->h || ray_v <= 0.0 || ray_v > s->g) {
          r.applicable = false;  // ray outside the reached domain
          break;
        }
        min_u = std::min(min_u, profile_extrema(s->u, s->h, 0.0, ray_u).lo);
        min_v = std::min(min_v, profile_extrema(s->v, s->g, 0.0, ray_v).lo);
      }
      if (r.applicable) {
        // Report the binding species: distance above its floor.
        const double slack_u = min_u - (floor_u - tol);
        const double slack_v = min_v - (1.0 - tol);
        r.target = 0.0;
        r.measured = std::min(slack_u, slack_v);
        r.margin = r.measured;
        r.pass = r.measured >= 0.0;
      }
    }
    rep.clauses.push_back(r);
  }

  // (c) predator saturation on the intermediate band.
  {
    const bool regime = p.lambda < p.d &&
                        p.d <= 2.0 * std::sqrt(p.lambda) + 1.0;
    ClauseResult r{"c_band_saturation", regime && !window.empty(), false,
                   tol, 0.0, 0.0};
    if (r.applicable) {
      double worst = 0.0;
      for (const auto* s : window) {
        const double a = (consts.c2 + eps) * s->t;
        const double b = (consts.c3 - eps) * s->t;
        if (!(a < b) || b > s->g) {
          r.applicable = false;
          break;
        }
        const Extrema e = profile_extrema(s->v, s->g, a, b);
        worst = std::max({worst, std::abs(e.lo - 1.0), std::abs(e.hi - 1.0)});
      }
      if (r.applicable) {
        r.measured = worst;
        r.margin = tol - worst;
        r.pass = worst <= tol;
      }
    }
    rep.clauses.push_back(r);
  }

  // (d) contraction toward the coexistence equilibrium.
  {
    const Equilibrium eq = closed_form_equilibrium(p);
    ClauseResult r{"d_equilibrium_contraction",
                   eq.regime_ok && consts.defined && window.size() >= 2,
                   false, 0.0, 0.0, 0.0};
    if (r.applicable) {
      auto deviation = [&](const SimState& s) {
        const double ray = (consts.c0 - eps) * s.t;
        if (ray <= 0.0 || ray > s.h || ray > s.g) return -1.0;
        const Extrema eu = profile_extrema(s.u, s.h, 0.0, ray);
        const Extrema ev = profile_extrema(s.v, s.g, 0.0, ray);
        return std::max(
            std::max(std::abs(eu.lo - eq.u_star), std::abs(eu.hi - eq.u_star)),
            std::max(std::abs(ev.lo - eq.v_star),
                     std::abs(ev.hi - eq.v_star)));
      };
      const double first = deviation(*window.front());
      const double last = deviation(*window.back());
      if (first < 0.0 || last < 0.0) {
        r.applicable = false;
      } else {
        r.target = first;
        r.measured = last;
        r.margin = first - last;
        r.pass = last <= first;
      }
    }
    rep.clauses.push_back(r);
  }

  rep.all_applicable_pass = std::all_of(
      rep.clauses.begin(), rep.clauses.end(),
      [](const ClauseResult& c) { return !c.applicable || c.pass; });
  return rep;
}

SpeedBoundsReport speed_bounds_check(const Trajectory& traj,
                                     const ModelParams& p) {
  SpeedBoundsReport rep;
  rep.widen = kBracketWiden;
  rep.h_fit = estimate_speed(traj.times, traj.h_series, kFitFraction);
  rep.g_fit = estimate_speed(traj.times, traj.g_series, kFitFraction);

  const double excess = p.lambda - p.b / p.m;
  rep.h_lo = excess > 0.0
                 ? solve_semiwave({p.mu, 1.0, excess}, kSemiwaveTol).c
                 : 0.0;
  rep.h_hi = solve_semiwave({p.mu, 1.0, p.lambda}, kSemiwaveTol).c;
  rep.g_lo = solve_semiwave({p.rho, p.d, 1.0}, kSemiwaveTol).c;
  rep.g_hi = solve_semiwave({p.rho, p.d, 1.0 + p.c}, kSemiwaveTol).c;

  rep.h_ok = rep.h_fit.value >= rep.h_lo * (1.0 - rep.widen) &&
             rep.h_fit.value <= rep.h_hi * (1.0 + rep.widen);
  rep.g_ok = rep.g_fit.value >= rep.g_lo * (1.0 - rep.widen) &&
             rep.g_fit.value <= rep.g_hi * (1.0 + rep.widen);
  return rep;
}

}  // namespace twofront
