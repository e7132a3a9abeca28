// End-to-end acceptance checks. Each numbered check prints exactly one
// PASS/FAIL line with the measured quantities; run with an index argument
// to execute a single check, or with none for the full battery.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twofront/criteria.hpp"
#include "twofront/csv.hpp"
#include "twofront/diagnostics.hpp"
#include "twofront/equilibrium.hpp"
#include "twofront/errors.hpp"
#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"
#include "twofront/semiwave.hpp"

namespace {

using namespace twofront;

const double kPi = std::acos(-1.0);

struct Check {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", x);
  return b;
}

ModelParams make_params(double lambda, double b, double m, double d, double c,
                        double mu, double rho, double h0, double g0) {
  ModelParams p;
  p.lambda = lambda;
  p.b = b;
  p.m = m;
  p.d = d;
  p.c = c;
  p.mu = mu;
  p.rho = rho;
  p.h0 = h0;
  p.g0 = g0;
  return p;
}

SolverConfig make_cfg(std::size_t n_u, std::size_t n_v, double t_end,
                      double snapshot_every, double dt_init = 1e-3) {
  SolverConfig cfg;
  cfg.n_u = n_u;
  cfg.n_v = n_v;
  cfg.t_end = t_end;
  cfg.snapshot_every = snapshot_every;
  cfg.dt_init = dt_init;
  return cfg;
}

ModelParams benchmark_params() {
  return make_params(2.0, 1.0, 1.0, 1.0, 1.0, 5.0, 5.0, 2.0, 1.5);
}

// Classification with the same escalation the bisection helpers use: an
// undecided probe re-runs with t_end doubled, at most twice.
SpeciesOutcome classify_single_retry(double theta, double d, double beta,
                                     double s0, const std::vector<double>& w0,
                                     SolverConfig cfg) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Trajectory traj = run_single_species(theta, d, beta, s0, w0, cfg);
    const SpeciesOutcome o = classify_single(traj, theta, d, beta, cfg);
    if (o != SpeciesOutcome::undecided) return o;
    cfg.t_end *= 2.0;
  }
  return SpeciesOutcome::undecided;
}

SpeciesOutcome classify_prey_retry(const ModelParams& p,
                                   const InitialData& init, SolverConfig cfg) {
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Trajectory traj = run(p, init, cfg);
    const SpeciesOutcome o = classify_outcome(traj, p, cfg).prey;
    if (o != SpeciesOutcome::undecided) return o;
    cfg.t_end *= 2.0;
  }
  return SpeciesOutcome::undecided;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "twofront_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Semi-wave speed at the capacity extremes, in normalized units.
Check check_semiwave_limits() {
  const double c_large = solve_semiwave({1e4, 1.0, 1.0}).c;
  const double c_small_scaled = solve_semiwave({1e-3, 1.0, 1.0}).c / 1e-3;
  const double ref = 1.0 / std::sqrt(3.0);
  const bool large_ok = c_large >= 1.90 && c_large < 2.00;
  const bool small_ok =
      c_small_scaled >= 0.95 * ref && c_small_scaled <= 1.05 * ref;
  return {large_ok && small_ok,
          "large-capacity c = " + num(c_large) +
              " (want [1.9, 2)); small-capacity scaled c = " +
              num(c_small_scaled) + " (want [" + num(0.95 * ref) + ", " +
              num(1.05 * ref) + "])"};
}

// 2. Strict growth of the speed in both the capacity and the carrying
// capacity across a 5x5 grid.
Check check_semiwave_monotonicity() {
  const std::vector<double> betas = {0.5, 1.0, 2.0, 4.0, 8.0};
  const std::vector<double> thetas = {0.5, 1.0, 1.5, 2.0, 3.0};
  const MonotonicityReport rep =
      speed_monotonicity_check(betas, thetas, 1.0);
  return {rep.pass && rep.n_checked == 40,
          "pairs checked = " + std::to_string(rep.n_checked) +
              ", max violation = " + num(rep.max_violation)};
}

// 3. Closed-form equilibrium against an independent damped Newton solve on
// random in-regime draws.
Check check_equilibrium_agreement() {
  std::mt19937_64 rng(20240915);
  std::uniform_real_distribution<double> uni(0.1, 4.0);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  double worst_rel = 0.0;
  double worst_res = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double b = uni(rng);
    const double m = uni(rng);
    const double c = uni(rng);
    const double lambda = (b + frac(rng) * (b / c)) / m;
    const ModelParams p =
        make_params(lambda, b, m, 1.0, c, 1.0, 1.0, 2.0, 1.0);
    const Equilibrium eq = closed_form_equilibrium(p);
    if (!eq.regime_ok) {
      return {false, "draw " + std::to_string(k) + " left the regime"};
    }
    const auto [nu, nv] = newton_equilibrium(p, {p.lambda, 1.0 + p.c});
    worst_rel = std::max(worst_rel, std::abs(eq.u_star - nu) / nu);
    worst_rel = std::max(worst_rel, std::abs(eq.v_star - nv) / nv);
    worst_res = std::max(worst_res, std::abs(eq.residual_prey));
    worst_res = std::max(worst_res, std::abs(eq.residual_pred));
  }
  return {worst_rel <= 1e-8 && worst_res <= 1e-9,
          "100 draws, worst closed-vs-newton rel diff = " + num(worst_rel) +
              " (cap 1e-8), worst residual = " + num(worst_res) +
              " (cap 1e-9)"};
}

// 4. Single-species dichotomy: guaranteed spreading at the threshold
// radius, and a critical capacity bracketed below it.
Check check_logistic_dichotomy() {
  const std::vector<double> w0 = cosine_profile(0.8, 128);
  SolverConfig cfg = make_cfg(128, 128, 60.0, 30.0);
  std::string detail;
  bool pass = true;
  for (double beta : {0.1, 1.0, 10.0}) {
    const SpeciesOutcome o =
        classify_single_retry(1.0, 1.0, beta, kPi / 2.0, w0, cfg);
    pass = pass && o == SpeciesOutcome::spreading;
    detail += "beta " + num(beta) +
              (o == SpeciesOutcome::spreading ? " spreads; " : " FAILED; ");
  }

  SingleSpeciesProblem prob;
  prob.theta = 1.0;
  prob.d = 1.0;
  prob.s0 = 0.8 * (kPi / 2.0);
  prob.w0 = cosine_profile(0.8, 96);
  // Probes that land near the critical capacity stall for a long time
  // before either taking off or collapsing; the probe budget has to cover
  // that plateau, so the base horizon is generous.
  SolverConfig cfg_b = make_cfg(96, 96, 120.0, 60.0);
  const CriticalCapacity cc =
      find_critical_capacity(prob, {0.02, 5.0}, 8, cfg_b);
  const double width = cc.upper - cc.lower;
  const SpeciesOutcome at_lower =
      classify_single_retry(1.0, 1.0, cc.lower, prob.s0, prob.w0, cfg_b);
  const SpeciesOutcome at_upper =
      classify_single_retry(1.0, 1.0, cc.upper, prob.s0, prob.w0, cfg_b);
  const bool one_flip = at_lower == SpeciesOutcome::vanishing &&
                        at_upper == SpeciesOutcome::spreading;
  pass = pass && width < 0.02 && one_flip;
  detail += "critical capacity in [" + num(cc.lower) + ", " + num(cc.upper) +
            "], width = " + num(width) + " (cap 0.02), one flip = " +
            (one_flip ? "yes" : "no");
  return {pass, detail};
}

// 5. Long single-species run: tail front speed against the semi-wave value.
Check check_front_speed_single() {
  const double c_ref = solve_semiwave({5.0, 1.0, 1.0}).c;
  const std::vector<double> w0 = cosine_profile(0.9, 1024);
  const SolverConfig cfg = make_cfg(1024, 1024, 200.0, 50.0);
  const Trajectory traj = run_single_species(1.0, 1.0, 5.0, 2.0, w0, cfg);
  const SpeedEstimate fit =
      estimate_speed(traj.times, traj.h_series, 0.4);
  const double rel = std::abs(fit.value - c_ref) / c_ref;
  return {rel <= 0.03 && fit.r2 >= 0.999,
          "fit speed = " + num(fit.value) + ", semi-wave c = " + num(c_ref) +
              ", rel err = " + num(rel) + " (cap 0.03), r2 = " +
              num(fit.r2) + " (floor 0.999)"};
}

// 6. The a-priori solution and front-speed bounds hold along the whole
// benchmark trajectory.
Check check_apriori_bounds() {
  const ModelParams p = benchmark_params();
  const InitialData init = cosine_initial_data(1.0, 129, 0.5, 129);
  const SolverConfig cfg = make_cfg(129, 129, 40.0, 5.0);
  const Trajectory traj = run(p, init, cfg);
  return {traj.violations.empty(),
          "violations = " + std::to_string(traj.violations.size()) +
              " over " + std::to_string(traj.times.size()) +
              " samples; M1 = " + num(traj.bounds.M1) + ", M2 = " +
              num(traj.bounds.M2) + ", M3 = " + num(traj.bounds.M3) +
              ", M4 = " + num(traj.bounds.M4)};
}

// 7. Both tail front speeds inside their semi-wave brackets (5% widened).
Check check_speed_brackets() {
  const ModelParams p = benchmark_params();
  const InitialData init = cosine_initial_data(1.0, 257, 0.5, 257);
  const SolverConfig cfg = make_cfg(257, 257, 30.0, 10.0);
  const Trajectory traj = run(p, init, cfg);
  const SpeedBoundsReport sb = speed_bounds_check(traj, p);
  return {sb.h_ok && sb.g_ok,
          "prey speed " + num(sb.h_fit.value) + " in [" + num(sb.h_lo) +
              ", " + num(sb.h_hi) + "] widened " + num(sb.widen) +
              ": " + (sb.h_ok ? "yes" : "no") + "; predator speed " +
              num(sb.g_fit.value) + " in [" + num(sb.g_lo) + ", " +
              num(sb.g_hi) + "]: " + (sb.g_ok ? "yes" : "no")};
}

// 8. Initial-radius thresholds: spreading above the spread radius;
// vanishing below the vanish radius at a fifth of the bisected critical
// capacity.
Check check_spreading_thresholds() {
  // Above the spread radius the prey spreads for any capacity.
  const ModelParams pa =
      make_params(1.5, 1.0, 1.0, 1.0, 1.0, 5.0, 0.5, 2.6, 1.5);
  const ThresholdReport ta = thresholds(pa, std::nullopt);
  if (!ta.prey_spread_radius || pa.h0 <= *ta.prey_spread_radius) {
    return {false, "setup error: h0 not above the spread radius"};
  }
  const InitialData init_a = cosine_initial_data(1.0, 129, 0.5, 129);
  const SpeciesOutcome above =
      classify_prey_retry(pa, init_a, make_cfg(129, 129, 30.0, 10.0));

  // Below the vanish radius, bisect the critical prey capacity.
  ModelParams pb = make_params(1.5, 1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 1.0, 0.8);
  const ThresholdReport tb = thresholds(pb, std::nullopt);
  if (pb.h0 >= tb.prey_vanish_radius) {
    return {false, "setup error: h0 not below the vanish radius"};
  }
  const InitialData init_b = cosine_initial_data(0.8, 96, 0.5, 96);
  const SolverConfig cfg_b = make_cfg(96, 96, 30.0, 15.0);
  auto prey_at = [&](double mu) {
    ModelParams q = pb;
    q.mu = mu;
    return classify_prey_retry(q, init_b, cfg_b);
  };
  double lo = 0.02, hi = 10.0;
  if (prey_at(lo) != SpeciesOutcome::vanishing ||
      prey_at(hi) != SpeciesOutcome::spreading) {
    return {false, "setup error: capacity bracket endpoints misclassify"};
  }
  for (int k = 0; k < 9; ++k) {
    const double mid = 0.5 * (lo + hi);
    // A stubbornly undecided probe counts as spreading, which only pushes
    // the critical estimate down and the final run deeper into vanishing.
    if (prey_at(mid) == SpeciesOutcome::vanishing) lo = mid;
    else hi = mid;
  }
  const double mu_star = 0.5 * (lo + hi);

  ModelParams pv = pb;
  pv.mu = 0.2 * mu_star;
  const Trajectory tv = run(pv, init_b, cfg_b);
  const SpeciesOutcome below = classify_outcome(tv, pv, cfg_b).prey;
  const double u_peak_final = tv.umax_series.back();

  const bool pass = above == SpeciesOutcome::spreading &&
                    below == SpeciesOutcome::vanishing &&
                    u_peak_final < 1e-3;
  return {pass,
          "above radius " + num(*ta.prey_spread_radius) + ": " +
              (above == SpeciesOutcome::spreading ? "spreads" : "FAILED") +
              "; critical capacity = " + num(mu_star) + ", run at " +
              num(pv.mu) + ": " +
              (below == SpeciesOutcome::vanishing ? "vanishes" : "FAILED") +
              ", final peak u = " + num(u_peak_final) + " (cap 1e-3)"};
}

// 9. Interior longtime limits: coexistence values when both spread, the
// carrying capacity when the predator dies out.
Check check_longtime_limits() {
  const ModelParams p =
      make_params(1.5, 1.0, 1.0, 1.0, 1.0, 5.0, 5.0, 2.0, 1.5);
  const Equilibrium eq = closed_form_equilibrium(p);
  if (!eq.regime_ok) return {false, "setup error: out of regime"};
  const InitialData init = cosine_initial_data(1.0, 129, 0.5, 129);
  const Trajectory traj = run(p, init, make_cfg(129, 129, 60.0, 20.0));
  const double du = std::abs(traj.u0_series.back() - eq.u_star);
  const double dv = std::abs(traj.v0_series.back() - eq.v_star);

  const ModelParams pp =
      make_params(1.5, 1.0, 1.0, 1.0, 1.0, 2.0, 0.1, 2.5, 0.5);
  const InitialData init_p = cosine_initial_data(1.0, 129, 0.5, 129);
  const Trajectory tp = run(pp, init_p, make_cfg(129, 129, 40.0, 20.0));
  const double dl = std::abs(tp.u0_series.back() - pp.lambda);

  return {du < 0.02 && dv < 0.02 && dl < 0.02,
          "|u(0) - u*| = " + num(du) + ", |v(0) - v*| = " + num(dv) +
              ", prey-only |u(0) - lambda| = " + num(dl) + " (caps 0.02)"};
}

// 10. Separation: a fast prey front launched more than one wavelength ahead
// of a slow predator keeps the required lead at every sample.
Check check_front_separation() {
  const double s = 1.0;
  const double L = 2.0 * kPi / std::sqrt(2.0 * 2.0 - s * s);
  const ModelParams p = make_params(2.0, 0.1, 1.0, 0.05, 0.2, 8.0, 1.0,
                                    1.0 + 1.1 * L, 1.0);
  const InitialData init = cosine_initial_data(1.0, 129, 0.5, 129);
  const Trajectory traj = run(p, init, make_cfg(129, 129, 50.0, 10.0));
  const SeparationReport rep = check_separation(p, s, traj);
  std::string detail = "L = " + num(rep.L_s) + ", applicable = " +
                       (rep.applicable ? "yes" : "no") + ", pass = " +
                       (rep.pass ? "yes" : "no");
  if (rep.first_violation_t) {
    detail += ", first violation at t = " + num(*rep.first_violation_t);
  }
  return {rep.applicable && rep.pass, detail};
}

// 11. Predation strictly slows the prey front relative to the uncoupled
// logistic run with the same remaining parameters.
Check check_predation_slows_prey() {
  ModelParams with_pred = benchmark_params();
  ModelParams without = with_pred;
  without.b = 0.0;
  const InitialData init = cosine_initial_data(1.0, 257, 0.5, 257);
  const SolverConfig cfg = make_cfg(257, 257, 40.0, 10.0);
  const Trajectory t1 = run(with_pred, init, cfg);
  const Trajectory t0 = run(without, init, cfg);
  const double v1 = estimate_speed(t1.times, t1.h_series, 0.4).value;
  const double v0 = estimate_speed(t0.times, t0.h_series, 0.4).value;
  const double gap = v0 - v1;
  return {v1 < v0 && gap > solver_tolerance,
          "prey speed with predation = " + num(v1) + ", without = " +
              num(v0) + ", gap = " + num(gap) + " (floor " +
              num(solver_tolerance) + ")"};
}

// 12. Bytewise repeatability of the written series, and grid convergence
// of the final prey front under doubled resolution.
Check check_determinism_convergence() {
  const ModelParams p = benchmark_params();
  const InitialData init = cosine_initial_data(1.0, 129, 0.5, 129);
  const SolverConfig cfg = make_cfg(129, 129, 10.0, 5.0);
  const auto dir = scratch_dir();

  const Trajectory a = run(p, init, cfg);
  const Trajectory b = run(p, init, cfg);
  write_csv(dir / "series_a.csv", series_table(a));
  write_csv(dir / "series_b.csv", series_table(b));
  const bool identical =
      file_bytes(dir / "series_a.csv") == file_bytes(dir / "series_b.csv");

  const InitialData init_f = cosine_initial_data(1.0, 257, 0.5, 257);
  const SolverConfig cfg_f = make_cfg(257, 257, 10.0, 5.0, 5e-4);
  const Trajectory f = run(p, init_f, cfg_f);
  const double rel =
      std::abs(f.h_series.back() - a.h_series.back()) / f.h_series.back();

  return {identical && rel < 0.01,
          std::string("rerun bytes identical = ") +
              (identical ? "yes" : "no") + "; final h " +
              num(a.h_series.back()) + " vs refined " +
              num(f.h_series.back()) + ", rel change = " + num(rel) +
              " (cap 0.01)"};
}

struct Entry {
  const char* name;
  Check (*fn)();
};

const Entry kChecks[] = {
    {"semi-wave speed limits", check_semiwave_limits},
    {"semi-wave monotonicity", check_semiwave_monotonicity},
    {"equilibrium closed form vs newton", check_equilibrium_agreement},
    {"logistic spreading dichotomy", check_logistic_dichotomy},
    {"single-species front speed", check_front_speed_single},
    {"a-priori bounds", check_apriori_bounds},
    {"front speed brackets", check_speed_brackets},
    {"spreading thresholds", check_spreading_thresholds},
    {"longtime interior limits", check_longtime_limits},
    {"front separation", check_front_separation},
    {"predation slows the prey front", check_predation_slows_prey},
    {"determinism and convergence", check_determinism_convergence},
};

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (int i = 1; i <= 12; ++i) {
    if (only != 0 && only != i) continue;
    Check r;
    try {
      r = kChecks[i - 1].fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%02d %s %s | %s\n", i, r.pass ? "PASS" : "FAIL",
                kChecks[i - 1].name, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
