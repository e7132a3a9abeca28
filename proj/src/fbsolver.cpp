#include "twofront/fbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twofront/errors.hpp"

namespace twofront {

namespace {

constexpr int kMaxHalvings = 20;
constexpr double kDeepClamp = -10.0 * solver_tolerance;

std::string fmt(double x) { return std::to_string(x); }

double stefan_speed(std::span<const double> w, double front, double capacity,
                    double dy) {
  const double grad = kernels::front_gradient(w, dy) / front;
  // The continuum front never retreats; a positive boundary gradient is a
  // discretization artifact of a collapsing profile.
  return std::max(0.0, -capacity * grad);
}

struct SpeciesScratch {
  std::vector<double> lower, diag, upper, rhs, other;

  void resize(std::size_t n) {
    lower.resize(n);
    diag.resize(n);
    upper.resize(n);
    rhs.resize(n);
    other.assign(n, 0.0);
  }
};

template <class React>
void advance_species(std::vector<double>& w, double& front,
                     double front_speed, double dt, double diffusivity,
                     React react, std::span<const double> other, Backend bk,
                     SpeciesScratch& s, std::size_t& deep_clamps) {
  const std::size_t n = w.size();
  const double dy = 1.0 / static_cast<double>(n - 1);
  kernels::explicit_stage(std::span<const double>(w), other, front,
                          front_speed, dt, react, std::span<double>(s.rhs),
                          bk);
  const double front_new = front + dt * front_speed;
  const double r = dt * diffusivity / (front_new * front_new * dy * dy);
  kernels::build_diffusion_rows(r, s.lower, s.diag, s.upper, bk);
  kernels::thomas_solve(s.lower, s.diag, s.upper, s.rhs);
  deep_clamps += kernels::clamp_nonnegative(s.rhs, kDeepClamp, bk);
  w.swap(s.rhs);
  front = front_new;
}

void require_finite(std::span<const double> w, double front, double t,
                    const char* name, Backend bk) {
  if (!std::isfinite(front) || !kernels::all_finite(w, bk)) {
    throw NonFiniteStateError(std::string("non-finite ") + name +
                              " state at t = " + fmt(t) +
                              ", front = " + fmt(front));
  }
}

// Halves dt until every front moves at most cfl cells this step.
double admissible_dt(double dt, double h_speed, double h_cell,
                     double g_speed, double g_cell, double cfl, double t) {
  int halvings = 0;
  while (dt * h_speed > cfl * h_cell || dt * g_speed > cfl * g_cell) {
    if (++halvings > kMaxHalvings) {
      throw StepRejectedError(
          "front CFL condition unattainable after 20 halvings at t = " +
          fmt(t));
    }
    dt *= 0.5;
  }
  return dt;
}

struct CoupledStepper {
  const ModelParams& p;
  const SolverConfig& cfg;
  SpeciesScratch su, sv;
  std::size_t deep_u = 0, deep_v = 0;
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;

  CoupledStepper(const ModelParams& params, const SolverConfig& config,
                 std::size_t n_u, std::size_t n_v)
      : p(params), cfg(config) {
    su.resize(n_u);
    sv.resize(n_v);
  }

  double prey_speed(const SimState& s) const {
    return stefan_speed(s.u, s.h, p.mu,
                        1.0 / static_cast<double>(s.u.size() - 1));
  }
  double pred_speed(const SimState& s) const {
    return stefan_speed(s.v, s.g, p.rho,
                        1.0 / static_cast<double>(s.v.size() - 1));
  }

  // Advances s in place by one accepted step; returns the dt used.
  double advance(SimState& s, double h_speed, double g_speed,
                 double dt_cap) {
    const double dy_u = 1.0 / static_cast<double>(s.u.size() - 1);
    const double dy_v = 1.0 / static_cast<double>(s.v.size() - 1);
    const double dt =
        admissible_dt(std::min(cfg.dt_init, dt_cap), h_speed, s.h * dy_u,
                      g_speed, s.g * dy_v, cfg.cfl_front, s.t);

    const Backend bk = cfg.backend;
    kernels::cross_interpolate(s.h, s.g, s.v, su.other, bk);
    kernels::cross_interpolate(s.g, s.h, s.u, sv.other, bk);

    auto prey = [this](double u, double v) {
      return reaction_terms(u, v, p).prey;
    };
    auto pred = [this](double v, double u) {
      return reaction_terms(u, v, p).pred;
    };
    advance_species(s.u, s.h, h_speed, dt, 1.0, prey, su.other, bk, su,
                    deep_u);
    advance_species(s.v, s.g, g_speed, dt, p.d, pred, sv.other, bk, sv,
                    deep_v);
    s.t += dt;

    require_finite(s.u, s.h, s.t, "prey", bk);
    require_finite(s.v, s.g, s.t, "predator", bk);
    dt_min = std::min(dt_min, dt);
    dt_max = std::max(dt_max, dt);
    return dt;
  }
};

void check_bound(Trajectory& traj, double t, const char* quantity,
                 double value, double bound) {
  const double limit = bound * (1.0 + bounds_slack);
  if (value > limit) {
    traj.violations.push_back({t, quantity, value, limit});
  }
}

void record_row(Trajectory& traj, const SimState& s, double u_max,
                double v_max, double h_speed, double g_speed) {
  traj.times.push_back(s.t);
  traj.h_series.push_back(s.h);
  traj.g_series.push_back(s.g);
  traj.umax_series.push_back(u_max);
  traj.vmax_series.push_back(v_max);
  traj.u0_series.push_back(s.u[0]);
  traj.v0_series.push_back(s.v.empty() ? 0.0 : s.v[0]);
  traj.h_speed_series.push_back(h_speed);
  traj.g_speed_series.push_back(g_speed);
}

}  // namespace

std::optional<std::string> SolverConfig::validate() const {
  if (n_u < 64 || n_v < 64) return "grid sizes must be at least 64";
  if (!(dt_init > 0.0)) return "dt_init must be positive";
  if (!(t_end > 0.0)) return "t_end must be positive";
  if (!(cfl_front > 0.0) || cfl_front > 0.5) {
    return "cfl_front must lie in (0, 0.5]";
  }
  if (!(snapshot_every > 0.0)) return "snapshot_every must be positive";
  if (!(vanish_eps > 0.0)) return "vanish_eps must be positive";
  if (!(growth_window > 0.0)) return "growth_window must be positive";
  return std::nullopt;
}

SimState step(const SimState& state, const ModelParams& p,
              const SolverConfig& cfg) {
  if (state.u.size() < 3 || state.v.size() < 3) {
    throw ValidationError("step requires both species profiles");
  }
  SimState s = state;
  CoupledStepper st(p, cfg, s.u.size(), s.v.size());
  st.advance(s, st.prey_speed(s), st.pred_speed(s),
             std::numeric_limits<double>::infinity());
  return s;
}

Trajectory run(const ModelParams& p, const InitialData& init,
               const SolverConfig& cfg) {
  if (init.u0.size() != cfg.n_u || init.v0.size() != cfg.n_v) {
    throw ValidationError("initial profiles must match the grid sizes");
  }
  for (const auto* w : {&init.u0, &init.v0}) {
    if (w->back() != 0.0) {
      throw ValidationError("initial profiles must end at exactly 0");
    }
    if (std::any_of(w->begin(), w->end(),
                    [](double x) { return x < 0.0 || !std::isfinite(x); })) {
      throw ValidationError("initial profiles must be finite and >= 0");
    }
  }

  Trajectory traj;
  traj.coupled = true;
  traj.bounds = apriori_bounds(p, init);

  SimState s{0.0, p.h0, p.g0, init.u0, init.v0};
  CoupledStepper st(p, cfg, cfg.n_u, cfg.n_v);
  const Backend bk = cfg.backend;

  double h_speed = st.prey_speed(s);
  double g_speed = st.pred_speed(s);
  record_row(traj, s, kernels::max_element_value(s.u, bk),
             kernels::max_element_value(s.v, bk), h_speed, g_speed);
  traj.snapshots.push_back(s);
  double next_snap = cfg.snapshot_every;

  const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
  try {
    while (cfg.t_end - s.t > t_eps) {
      const double dt = st.advance(s, h_speed, g_speed, cfg.t_end - s.t);
      h_speed = st.prey_speed(s);
      g_speed = st.pred_speed(s);

      const double u_max = kernels::max_element_value(s.u, bk);
      const double v_max = kernels::max_element_value(s.v, bk);
      record_row(traj, s, u_max, v_max, h_speed, g_speed);
      check_bound(traj, s.t, "u_max", u_max, traj.bounds.M1);
      check_bound(traj, s.t, "v_max", v_max, traj.bounds.M2);
      const std::size_t k = traj.times.size() - 1;
      check_bound(traj, s.t, "h_front_speed",
                  (traj.h_series[k] - traj.h_series[k - 1]) / dt,
                  traj.bounds.M3);
      check_bound(traj, s.t, "g_front_speed",
                  (traj.g_series[k] - traj.g_series[k - 1]) / dt,
                  traj.bounds.M4);

      if (s.t >= next_snap - t_eps) {
        traj.snapshots.push_back(s);
        while (next_snap <= s.t + t_eps) next_snap += cfg.snapshot_every;
      }
    }
  } catch (const StepRejectedError& e) {
    throw StepRejectedError(std::string("run aborted: ") + e.what());
  } catch (const NonFiniteStateError& e) {
    throw NonFiniteStateError(std::string("run aborted: ") + e.what());
  }
  if (traj.snapshots.back().t != s.t) traj.snapshots.push_back(s);
  traj.deep_clamps_u = st.deep_u;
  traj.deep_clamps_v = st.deep_v;
  traj.dt_min = st.dt_min;
  traj.dt_max = st.dt_max;
  return traj;
}

Trajectory run_single_species(double theta, double d, double beta, double s0,
                              std::span<const double> w0,
                              const SolverConfig& cfg) {
  if (!(theta > 0.0) || !(d > 0.0) || !(beta >= 0.0) || !(s0 > 0.0)) {
    throw ValidationError("single-species parameters must be positive");
  }
  if (w0.size() < 64) {
    throw ValidationError("single-species profile needs at least 64 nodes");
  }
  if (w0.back() != 0.0) {
    throw ValidationError("initial profile must end at exactly 0");
  }

  const std::size_t n = w0.size();
  const double dy = 1.0 / static_cast<double>(n - 1);
  const Backend bk = cfg.backend;

  Trajectory traj;
  traj.coupled = false;
  {
    // Single-species analogues of the a-priori bounds.
    const double peak = *std::max_element(w0.begin(), w0.end());
    const double m1 = std::max(theta, peak);
    const double dx = s0 * dy;
    double lo = (w0[1] - w0[0]) / dx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      lo = std::min(lo, (w0[i + 1] - w0[i]) / dx);
    }
    traj.bounds =
        AprioriBounds{m1, 0.0,
                      2.0 * beta * std::max(m1 * std::sqrt(theta / (2.0 * d)),
                                            -lo),
                      0.0};
  }

  SimState s;
  s.t = 0.0;
  s.h = s0;
  s.g = 0.0;
  s.u.assign(w0.begin(), w0.end());

  SpeciesScratch scratch;
  scratch.resize(n);
  std::vector<double> zeros(n, 0.0);
  auto react = [theta](double w, double) { return w * (theta - w); };

  double speed = stefan_speed(s.u, s.h, beta, dy);
  record_row(traj, s, kernels::max_element_value(s.u, bk), 0.0, speed, 0.0);
  traj.snapshots.push_back(s);
  double next_snap = cfg.snapshot_every;

  const double t_eps = 1e-12 * std::max(1.0, cfg.t_end);
  try {
    while (cfg.t_end - s.t > t_eps) {
      double dt = std::min(cfg.dt_init, cfg.t_end - s.t);
      dt = admissible_dt(dt, speed, s.h * dy, 0.0, 1.0, cfg.cfl_front, s.t);
      advance_species(s.u, s.h, speed, dt, d, react,
                      std::span<const double>(zeros), bk, scratch,
                      traj.deep_clamps_u);
      s.t += dt;
      require_finite(s.u, s.h, s.t, "profile", bk);
      traj.dt_min = std::min(traj.dt_min, dt);
      traj.dt_max = std::max(traj.dt_max, dt);

      speed = stefan_speed(s.u, s.h, beta, dy);
      const double w_max = kernels::max_element_value(s.u, bk);
      record_row(traj, s, w_max, 0.0, speed, 0.0);
      check_bound(traj, s.t, "u_max", w_max, traj.bounds.M1);
      const std::size_t k = traj.times.size() - 1;
      check_bound(traj, s.t, "h_front_speed",
                  (traj.h_series[k] - traj.h_series[k - 1]) / dt,
                  traj.bounds.M3);

      if (s.t >= next_snap - t_eps) {
        traj.snapshots.push_back(s);
        while (next_snap <= s.t + t_eps) next_snap += cfg.snapshot_every;
      }
    }
  } catch (const StepRejectedError& e) {
    throw StepRejectedError(std::string("single-species run aborted: ") +
                            e.what());
  } catch (const NonFiniteStateError& e) {
    throw NonFiniteStateError(std::string("single-species run aborted: ") +
                              e.what());
  }
  if (traj.snapshots.back().t != s.t) traj.snapshots.push_back(s);
  return traj;
}

}  // namespace twofront
