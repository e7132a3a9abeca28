#include "twofront/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "twofront/config.hpp"
#include "twofront/criteria.hpp"
#include "twofront/csv.hpp"
#include "twofront/diagnostics.hpp"
#include "twofront/equilibrium.hpp"
#include "twofront/errors.hpp"
#include "twofront/fbsolver.hpp"
#include "twofront/semiwave.hpp"

namespace twofront::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUndecided = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::both_spread: return "both_spread";
    case Outcome::prey_only: return "prey_only";
    case Outcome::pred_only: return "pred_only";
    case Outcome::both_vanish: return "both_vanish";
    default: return "undecided";
  }
}

const char* species_name(SpeciesOutcome o) {
  switch (o) {
    case SpeciesOutcome::spreading: return "spreading";
    case SpeciesOutcome::vanishing: return "vanishing";
    default: return "undecided";
  }
}

std::string yesno(bool x) { return x ? "yes" : "no"; }

void kv(std::ostream& os, const std::string& key, const std::string& value) {
  os << key;
  for (std::size_t i = key.size(); i < 26; ++i) os << ' ';
  os << "= " << value << '\n';
}

void push_row(CsvTable& t, const std::string& clause, double target,
              double measured, double margin, bool pass) {
  t.cells.push_back({clause, format_g17(target), format_g17(measured),
                     format_g17(margin), pass ? "1" : "0"});
}

double max_discrete_speed(const std::vector<double>& times,
                          const std::vector<double>& front) {
  double peak = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double dt = times[k] - times[k - 1];
    if (dt > 0.0) {
      peak = std::max(peak, (front[k] - front[k - 1]) / dt);
    }
  }
  return peak;
}

// Diagnostics report for one coupled run: classification, tail speeds
// against their semi-wave brackets, a-priori bound checks, ray clauses.
void write_report(const std::filesystem::path& dir, const Trajectory& traj,
                  const ModelParams& p, const SolverConfig& cfg,
                  const Classification& cl) {
  const SpeedBoundsReport sb = speed_bounds_check(traj, p);
  const SpeedConstants sc = speed_constants(p, traj.bounds.M2);
  const RayRegionReport ray = ray_region_check(traj, p, sc, 0.1, 0.1);

  std::ostringstream os;
  kv(os, "outcome", outcome_name(cl.outcome));
  kv(os, "prey_class", species_name(cl.prey));
  kv(os, "pred_class", species_name(cl.pred));
  if (cl.u_limit) kv(os, "u_limit_predicted", format_g17(*cl.u_limit));
  if (cl.v_limit) kv(os, "v_limit_predicted", format_g17(*cl.v_limit));
  if (!cl.note.empty()) kv(os, "note", cl.note);
  kv(os, "u_at_0_final", format_g17(traj.u0_series.back()));
  kv(os, "v_at_0_final", format_g17(traj.v0_series.back()));
  kv(os, "h_final", format_g17(traj.h_series.back()));
  kv(os, "g_final", format_g17(traj.g_series.back()));

  kv(os, "h_speed_fit", format_g17(sb.h_fit.value));
  kv(os, "h_speed_r2", format_g17(sb.h_fit.r2));
  kv(os, "h_intercept", format_g17(sb.h_fit.H_est));
  kv(os, "h_fit_window",
     "[" + format_g17(sb.h_fit.t_lo) + ", " + format_g17(sb.h_fit.t_hi) +
         "]");
  kv(os, "h_bracket",
     "[" + format_g17(sb.h_lo) + ", " + format_g17(sb.h_hi) + "]");
  kv(os, "h_in_bracket", yesno(sb.h_ok));
  kv(os, "g_speed_fit", format_g17(sb.g_fit.value));
  kv(os, "g_speed_r2", format_g17(sb.g_fit.r2));
  kv(os, "g_intercept", format_g17(sb.g_fit.H_est));
  kv(os, "g_bracket",
     "[" + format_g17(sb.g_lo) + ", " + format_g17(sb.g_hi) + "]");
  kv(os, "g_in_bracket", yesno(sb.g_ok));

  kv(os, "M1", format_g17(traj.bounds.M1));
  kv(os, "M2", format_g17(traj.bounds.M2));
  kv(os, "M3", format_g17(traj.bounds.M3));
  kv(os, "M4", format_g17(traj.bounds.M4));
  kv(os, "bound_violations", std::to_string(traj.violations.size()));
  for (std::size_t i = 0; i < std::min<std::size_t>(traj.violations.size(), 5);
       ++i) {
    const auto& v = traj.violations[i];
    kv(os, "violation_" + std::to_string(i),
       v.quantity + " = " + format_g17(v.value) + " > " +
           format_g17(v.bound) + " at t = " + format_g17(v.t));
  }
  kv(os, "deep_clamps_u", std::to_string(traj.deep_clamps_u));
  kv(os, "deep_clamps_v", std::to_string(traj.deep_clamps_v));
  kv(os, "dt_min", format_g17(traj.dt_min));
  kv(os, "dt_max", format_g17(traj.dt_max));
  kv(os, "steps", std::to_string(traj.times.size() - 1));

  for (const auto& r : ray.clauses) {
    kv(os, "ray_" + r.clause,
       r.applicable ? (std::string(r.pass ? "pass" : "fail") +
                       " (measured " + format_g17(r.measured) + ", target " +
                       format_g17(r.target) + ")")
                    : std::string("not applicable"));
  }

  std::ofstream txt(dir / "report.txt", std::ios::binary);
  txt << os.str();

  CsvTable t;
  t.columns = {"clause", "target", "measured", "margin", "pass"};
  push_row(t, "h_speed_lower", sb.h_lo * (1.0 - sb.widen), sb.h_fit.value,
           sb.h_fit.value - sb.h_lo * (1.0 - sb.widen),
           sb.h_fit.value >= sb.h_lo * (1.0 - sb.widen));
  push_row(t, "h_speed_upper", sb.h_hi * (1.0 + sb.widen), sb.h_fit.value,
           sb.h_hi * (1.0 + sb.widen) - sb.h_fit.value,
           sb.h_fit.value <= sb.h_hi * (1.0 + sb.widen));
  push_row(t, "g_speed_lower", sb.g_lo * (1.0 - sb.widen), sb.g_fit.value,
           sb.g_fit.value - sb.g_lo * (1.0 - sb.widen),
           sb.g_fit.value >= sb.g_lo * (1.0 - sb.widen));
  push_row(t, "g_speed_upper", sb.g_hi * (1.0 + sb.widen), sb.g_fit.value,
           sb.g_hi * (1.0 + sb.widen) - sb.g_fit.value,
           sb.g_fit.value <= sb.g_hi * (1.0 + sb.widen));

  const double m1_cap = traj.bounds.M1 * (1.0 + bounds_slack);
  const double m2_cap = traj.bounds.M2 * (1.0 + bounds_slack);
  const double m3_cap = traj.bounds.M3 * (1.0 + bounds_slack);
  const double m4_cap = traj.bounds.M4 * (1.0 + bounds_slack);
  double u_peak = 0.0, v_peak = 0.0;
  for (double x : traj.umax_series) u_peak = std::max(u_peak, x);
  for (double x : traj.vmax_series) v_peak = std::max(v_peak, x);
  push_row(t, "bound_u_max", m1_cap, u_peak, m1_cap - u_peak,
           u_peak <= m1_cap);
  push_row(t, "bound_v_max", m2_cap, v_peak, m2_cap - v_peak,
           v_peak <= m2_cap);
  const double h_spd = max_discrete_speed(traj.times, traj.h_series);
  const double g_spd = max_discrete_speed(traj.times, traj.g_series);
  push_row(t, "bound_h_speed", m3_cap, h_spd, m3_cap - h_spd,
           h_spd <= m3_cap);
  push_row(t, "bound_g_speed", m4_cap, g_spd, m4_cap - g_spd,
           g_spd <= m4_cap);

  for (const auto& r : ray.clauses) {
    if (r.applicable) {
      push_row(t, "ray_" + r.clause, r.target, r.measured, r.margin, r.pass);
    }
  }
  write_csv(dir / "report.csv", t);
  (void)cfg;
}

int cmd_simulate(const std::string& config_path) {
  const RunConfig rc = parse_config(read_file(config_path));
  const InitialData init = make_initial_data(rc);
  const Trajectory traj = run(rc.params, init, rc.solver);

  const std::filesystem::path dir(rc.output_dir);
  std::filesystem::create_directories(dir);
  write_run_outputs(dir, traj);

  const Classification cl = classify_outcome(traj, rc.params, rc.solver);
  write_report(dir, traj, rc.params, rc.solver, cl);

  std::printf("outcome %s | h %s | g %s | violations %zu | outputs %s\n",
              outcome_name(cl.outcome),
              format_g17(traj.h_series.back()).c_str(),
              format_g17(traj.g_series.back()).c_str(),
              traj.violations.size(), rc.output_dir.c_str());
  return cl.outcome == Outcome::undecided ? kExitUndecided : kExitOk;
}

int cmd_semiwave(double beta, double d, double theta, double tol,
                 const std::string& profile_out) {
  const SemiWaveSolution sol = solve_semiwave({beta, d, theta}, tol);
  std::printf("c = %s\n", format_g17(sol.c).c_str());
  std::printf("c_normalized = %s\n",
              format_g17(sol.c / std::sqrt(theta * d)).c_str());
  std::printf("y_max = %s\n", format_g17(sol.y_max).c_str());
  std::printf("residual = %s\n", format_g17(sol.residual).c_str());
  if (!profile_out.empty()) {
    CsvTable t;
    t.columns = {"y", "q"};
    for (std::size_t i = 0; i < sol.y.size(); ++i) {
      t.cells.push_back({format_g17(sol.y[i]), format_g17(sol.q[i])});
    }
    write_csv(profile_out, t);
  }
  return kExitOk;
}

int cmd_equilibrium(double lambda, double b, double m, double c) {
  ModelParams p;
  p.lambda = lambda;
  p.b = b;
  p.m = m;
  p.c = c;
  p.d = p.mu = p.rho = p.h0 = p.g0 = 1.0;  // unused by the kinetics
  const Equilibrium eq = closed_form_equilibrium(p);
  std::printf("regime_ok = %s\n", eq.regime_ok ? "true" : "false");
  if (!eq.regime_ok) return kExitOk;
  std::printf("u_star = %s\n", format_g17(eq.u_star).c_str());
  std::printf("v_star = %s\n", format_g17(eq.v_star).c_str());
  std::printf("A = %s\n", format_g17(eq.A).c_str());
  std::printf("Delta1 = %s\n", format_g17(eq.Delta1).c_str());
  std::printf("residual_prey = %s\n", format_g17(eq.residual_prey).c_str());
  std::printf("residual_pred = %s\n", format_g17(eq.residual_pred).c_str());
  return kExitOk;
}

int cmd_criteria(const std::string& params_file, std::optional<double> s,
                 const std::string& csv_out) {
  const RunConfig rc = parse_config(read_file(params_file));
  const ThresholdReport rep = thresholds(rc.params, s);

  std::ostringstream os;
  kv(os, "prey_spread_radius",
     rep.prey_spread_radius ? format_g17(*rep.prey_spread_radius)
                            : "undefined");
  kv(os, "prey_vanish_radius", format_g17(rep.prey_vanish_radius));
  kv(os, "pred_spread_radius", format_g17(rep.pred_spread_radius));
  kv(os, "pred_vanish_radius", format_g17(rep.pred_vanish_radius));
  kv(os, "L_s", rep.L_s ? format_g17(*rep.L_s) : "undefined");
  kv(os, "s_bar_exists", yesno(rep.s_bar_exists));
  kv(os, "prey_extinction_regime", yesno(rep.prey_extinction_regime));
  kv(os, "F_membership", yesno(rep.F_membership));
  kv(os, "c_prey_cap", format_g17(rep.c_prey_cap));
  kv(os, "c_pred_floor", format_g17(rep.c_pred_floor));
  std::fputs(os.str().c_str(), stdout);

  if (!csv_out.empty()) {
    CsvTable t;
    t.columns = {"quantity", "value"};
    auto row = [&](const std::string& k, const std::string& v) {
      t.cells.push_back({k, v});
    };
    row("prey_spread_radius", rep.prey_spread_radius
                                  ? format_g17(*rep.prey_spread_radius)
                                  : "undefined");
    row("prey_vanish_radius", format_g17(rep.prey_vanish_radius));
    row("pred_spread_radius", format_g17(rep.pred_spread_radius));
    row("pred_vanish_radius", format_g17(rep.pred_vanish_radius));
    row("L_s", rep.L_s ? format_g17(*rep.L_s) : "undefined");
    row("s_bar_exists", yesno(rep.s_bar_exists));
    row("prey_extinction_regime", yesno(rep.prey_extinction_regime));
    row("F_membership", yesno(rep.F_membership));
    row("c_prey_cap", format_g17(rep.c_prey_cap));
    row("c_pred_floor", format_g17(rep.c_pred_floor));
    write_csv(csv_out, t);
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, int workers_override) {
  const RunConfig rc = parse_config(read_file(config_path));
  if (rc.sweep.empty()) {
    throw ValidationError("sweep requires at least one sweep_<param> key");
  }

  // Cartesian product in deterministic (sorted-key, listed-value) order.
  std::vector<std::string> names;
  std::vector<const std::vector<double>*> lists;
  for (const auto& [name, values] : rc.sweep) {
    names.push_back(name);
    lists.push_back(&values);
  }
  std::vector<ModelParams> jobs;
  std::vector<std::size_t> odo(names.size(), 0);
  for (;;) {
    ModelParams p = rc.params;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const double v = (*lists[i])[odo[i]];
      if (names[i] == "lambda") p.lambda = v;
      else if (names[i] == "b") p.b = v;
      else if (names[i] == "m") p.m = v;
      else if (names[i] == "d") p.d = v;
      else if (names[i] == "c") p.c = v;
      else if (names[i] == "mu") p.mu = v;
      else if (names[i] == "rho") p.rho = v;
      else if (names[i] == "h0") p.h0 = v;
      else if (names[i] == "g0") p.g0 = v;
    }
    if (auto err = p.validate()) {
      throw ValidationError("sweep combination invalid: " + *err);
    }
    jobs.push_back(p);
    std::size_t k = 0;
    while (k < odo.size() && ++odo[k] == lists[k]->size()) {
      odo[k] = 0;
      ++k;
    }
    if (k == odo.size()) break;
  }

  const InitialData init = make_initial_data(rc);
  std::vector<std::vector<std::string>> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::atomic<bool> any_undecided{false};
  std::mutex err_mutex;
  std::string first_error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size() || failed.load()) break;
      try {
        const ModelParams& p = jobs[i];
        const Trajectory traj = run(p, init, rc.solver);
        const Classification cl = classify_outcome(traj, p, rc.solver);
        if (cl.outcome == Outcome::undecided) any_undecided = true;
        const SpeedEstimate hs =
            estimate_speed(traj.times, traj.h_series, 0.4);
        const SpeedEstimate gs =
            estimate_speed(traj.times, traj.g_series, 0.4);
        rows[i] = {format_g17(p.lambda), format_g17(p.b),
                   format_g17(p.m), format_g17(p.d), format_g17(p.c),
                   format_g17(p.mu), format_g17(p.rho), format_g17(p.h0),
                   format_g17(p.g0), outcome_name(cl.outcome),
                   format_g17(hs.value), format_g17(gs.value),
                   format_g17(traj.u0_series.back()),
                   format_g17(traj.v0_series.back())};
      } catch (const std::exception& e) {
        failed = true;
        std::lock_guard<std::mutex> lk(err_mutex);
        if (first_error.empty()) first_error = e.what();
      }
    }
  };

  const int workers = std::max(
      1, workers_override > 0 ? workers_override : rc.workers);
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(workers), jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i + 1 < n_threads; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  if (failed.load()) {
    throw NumericalError("sweep run failed: " + first_error);
  }

  CsvTable t;
  t.columns = {"lambda", "b", "m", "d", "c", "mu", "rho", "h0", "g0",
               "outcome", "h_speed", "g_speed", "u_final_0", "v_final_0"};
  t.cells = std::move(rows);
  const std::filesystem::path dir(rc.output_dir);
  std::filesystem::create_directories(dir);
  write_csv(dir / "summary.csv", t);
  std::printf("sweep rows %zu | outputs %s\n", t.cells.size(),
              rc.output_dir.c_str());
  return any_undecided.load() ? kExitUndecided : kExitOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: config: %s\n", e.what());
    return kExitConfig;
  } catch (const UndecidedError& e) {
    std::fprintf(stderr, "error: inconclusive: %s\n", e.what());
    return kExitUndecided;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: numerical: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return kExitNumerical;
  }
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{
      "Free-boundary prey-predator laboratory: front-fixed PDE runs, "
      "semi-wave speeds, equilibria, thresholds, sweeps"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand(
      "simulate", "Run the coupled system from a config file");
  std::string sim_config;
  sim->add_option("--config", sim_config, "key = value config file")
      ->required();

  auto* semi = app.add_subcommand(
      "semiwave", "Solve the semi-wave speed problem");
  double sw_beta = 0.0, sw_d = 1.0, sw_theta = 1.0, sw_tol = 1e-10;
  std::string sw_profile;
  semi->add_option("--beta", sw_beta, "front capacity")->required();
  semi->add_option("--d", sw_d, "diffusivity")->required();
  semi->add_option("--theta", sw_theta, "carrying capacity")->required();
  semi->add_option("--tol", sw_tol, "relative tolerance on c");
  semi->add_option("--profile-out", sw_profile, "write profile CSV (y,q)");

  auto* eq = app.add_subcommand(
      "equilibrium", "Coexistence equilibrium of the kinetics");
  double eq_lambda = 0.0, eq_b = 0.0, eq_m = 0.0, eq_c = 0.0;
  eq->add_option("--lambda", eq_lambda, "prey growth")->required();
  eq->add_option("--b", eq_b, "capture rate")->required();
  eq->add_option("--m", eq_m, "half-saturation")->required();
  eq->add_option("--c", eq_c, "conversion rate")->required();

  auto* crit = app.add_subcommand(
      "criteria", "Closed-form thresholds and regime flags");
  std::string crit_params, crit_csv;
  double crit_s = 0.0;
  bool crit_has_s = false;
  crit->add_option("--params", crit_params, "config file with parameters")
      ->required();
  crit->add_option("--s", crit_s, "separation speed s")
      ->each([&](const std::string&) { crit_has_s = true; });
  crit->add_option("--csv", crit_csv, "also write the report as CSV");

  auto* swp = app.add_subcommand(
      "sweep", "Cartesian sweep over sweep_<param> lists");
  std::string swp_config;
  int swp_workers = 0;
  swp->add_option("--config", swp_config, "config with sweep_<param> keys")
      ->required();
  swp->add_option("--workers", swp_workers,
                  "override the worker count from the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (sim->parsed()) {
    return guarded([&] { return cmd_simulate(sim_config); });
  }
  if (semi->parsed()) {
    return guarded(
        [&] { return cmd_semiwave(sw_beta, sw_d, sw_theta, sw_tol,
                                  sw_profile); });
  }
  if (eq->parsed()) {
    return guarded([&] { return cmd_equilibrium(eq_lambda, eq_b, eq_m,
                                                eq_c); });
  }
  if (crit->parsed()) {
    return guarded([&] {
      return cmd_criteria(
          crit_params,
          crit_has_s ? std::optional<double>(crit_s) : std::nullopt,
          crit_csv);
    });
  }
  if (swp->parsed()) {
    return guarded([&] { return cmd_sweep(swp_config, swp_workers); });
  }
  return kExitConfig;
}

}  // namespace twofront::cli
