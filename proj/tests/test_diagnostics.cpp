#include <cmath>
#include <vector>

#include "doctest.h"
#include "twofront/diagnostics.hpp"
#include "twofront/errors.hpp"
#include "twofront/fbsolver.hpp"
#include "twofront/model.hpp"

using namespace twofront;

namespace {

ModelParams benchmark_params() {
  ModelParams p;
  p.lambda = 2.0;
  p.b = 1.0;
  p.m = 1.0;
  p.c = 1.0;
  p.d = 1.0;
  p.mu = 5.0;
  p.rho = 5.0;
  p.h0 = 2.0;
  p.g0 = 1.5;
  return p;
}

ModelParams coexistence_params() {
  ModelParams p = benchmark_params();
  p.lambda = 1.5;
  p.h0 = 2.5;
  p.g0 = 2.0;
  return p;
}

SolverConfig quick_config(std::size_t n, double t_end) {
  SolverConfig cfg;
  cfg.n_u = n;
  cfg.n_v = n;
  cfg.dt_init = 1e-3;
  cfg.t_end = t_end;
  cfg.snapshot_every = t_end / 8.0;
  return cfg;
}

struct Series {
  std::vector<double> t, front, peak;
};

Series synthetic(double speed, double intercept, double peak_value,
                 double t_end = 50.0, std::size_t n = 1001) {
  Series s;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
    s.t.push_back(t);
    s.front.push_back(intercept + speed * t);
    s.peak.push_back(peak_value);
  }
  return s;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("speed fit recovers an exact line") {
  const Series s = synthetic(0.7, 2.0, 1.0);
  const auto est = estimate_speed(s.t, s.front, 0.4);
  CHECK(est.value == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(est.H_est == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(est.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.t_lo == doctest::Approx(30.0));
  CHECK(est.t_hi == doctest::Approx(50.0));
}

TEST_CASE("speed fit of a constant series reports zero slope") {
  const Series s = synthetic(0.0, 3.5, 1.0);
  const auto est = estimate_speed(s.t, s.front, 0.5);
  CHECK(est.value == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(est.r2 == 1.0);  // no variance to explain
}

TEST_CASE("speed fit is shift-equivariant") {
  const Series s = synthetic(1.3, 0.5, 1.0);
  std::vector<double> shifted = s.t;
  for (double& t : shifted) t += 7.0;
  const auto a = estimate_speed(s.t, s.front, 0.4);
  const auto b = estimate_speed(shifted, s.front, 0.4);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
  CHECK(b.H_est == doctest::Approx(a.H_est - 1.3 * 7.0).epsilon(1e-9));
}

TEST_CASE("speed fit tolerates small wobble") {
  Series s = synthetic(0.9, 1.0, 1.0);
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    s.front[i] += 1e-3 * std::sin(3.0 * s.t[i]);
  }
  const auto est = estimate_speed(s.t, s.front, 0.4);
  CHECK(est.value == doctest::Approx(0.9).epsilon(1e-3));
  CHECK(est.r2 > 0.999);
}

TEST_CASE("speed fit input gates") {
  const Series s = synthetic(1.0, 0.0, 1.0, 50.0, 10);
  CHECK_THROWS_AS(estimate_speed(s.t, s.front, 0.4), InsufficientDataError);
  const Series ok = synthetic(1.0, 0.0, 1.0);
  CHECK_THROWS_AS(estimate_speed(ok.t, ok.front, 0.0), ValidationError);
  CHECK_THROWS_AS(estimate_speed(ok.t, ok.front, 0.7), ValidationError);
  std::vector<double> trunc(ok.t.begin(), ok.t.end() - 1);
  CHECK_THROWS_AS(estimate_speed(trunc, ok.front, 0.4),
                  InsufficientDataError);
}

TEST_CASE("species classification rules") {
  SolverConfig cfg;
  cfg.growth_window = 10.0;
  cfg.vanish_eps = 1e-3;

  SUBCASE("still front with dead density vanishes") {
    const Series s = synthetic(0.0, 1.0, 1e-5);
    CHECK(classify_species(s.t, s.front, s.peak, 1.0, 101, cfg) ==
          SpeciesOutcome::vanishing);
  }
  SUBCASE("front faster than half the prediction spreads") {
    const Series s = synthetic(0.8, 1.0, 1.0);
    CHECK(classify_species(s.t, s.front, s.peak, 1.0, 101, cfg) ==
          SpeciesOutcome::spreading);
  }
  SUBCASE("slow front with live density is undecided") {
    const Series s = synthetic(0.1, 1.0, 0.5);
    CHECK(classify_species(s.t, s.front, s.peak, 1.0, 101, cfg) ==
          SpeciesOutcome::undecided);
  }
  SUBCASE("dead density but drifting front is not called vanishing") {
    Series s = synthetic(0.3, 1.0, 1e-5);
    CHECK(classify_species(s.t, s.front, s.peak, 1.0, 101, cfg) !=
          SpeciesOutcome::vanishing);
  }
}

TEST_CASE("benchmark run classifies as both spreading") {
  const ModelParams p = benchmark_params();
  const SolverConfig cfg = quick_config(129, 10.0);
  const auto traj = run(p, cosine_initial_data(1.0, 129, 1.0, 129), cfg);
  const auto cl = classify_outcome(traj, p, cfg);
  CHECK(cl.outcome == Outcome::both_spread);
  CHECK(cl.prey == SpeciesOutcome::spreading);
  CHECK(cl.pred == SpeciesOutcome::spreading);
  // lambda = 2, b = m = c = 1 sits outside the coexistence window, so no
  // interior limit is predicted.
  CHECK_FALSE(cl.u_limit.has_value());
  CHECK_FALSE(cl.note.empty());
}

TEST_CASE("subcritical single-species run classifies as vanishing") {
  SolverConfig cfg = quick_config(96, 25.0);
  const auto w0 = cosine_profile(0.8, 96);
  const auto traj = run_single_species(1.0, 1.0, 0.2, 1.0, w0, cfg);
  CHECK(classify_single(traj, 1.0, 1.0, 0.2, cfg) ==
        SpeciesOutcome::vanishing);
  CHECK(traj.umax_series.back() < cfg.vanish_eps);
}

TEST_CASE("speed constant formulas and orderings") {
  const ModelParams p = benchmark_params();
  const auto sc = speed_constants(p, 2.0);
  REQUIRE(sc.defined);
  CHECK(sc.c1 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sc.c2 == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sc.c3 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sc.c4 == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sc.c0 == 2.0);
  CHECK(sc.kappa == doctest::Approx(4.0));
  REQUIRE(sc.c5.has_value());
  CHECK(*sc.c5 == doctest::Approx(2.0 * std::sqrt(1.2)).epsilon(1e-12));
  CHECK(*sc.c5 >= sc.c1);  // the reduced floor can only raise the speed
  CHECK(sc.ordering_ok);

  ModelParams weak = p;
  weak.lambda = 0.8;  // m*lambda <= b
  const auto un = speed_constants(weak, 2.0);
  CHECK_FALSE(un.defined);
  CHECK_FALSE(un.ordering_note.empty());
}

TEST_CASE("ray regions on the spreading benchmark") {
  const ModelParams p = benchmark_params();
  const SolverConfig cfg = quick_config(129, 10.0);
  const auto traj = run(p, cosine_initial_data(1.0, 129, 1.0, 129), cfg);
  const auto sc = speed_constants(p, apriori_bounds(
      p, cosine_initial_data(1.0, 129, 1.0, 129)).M2);

  SUBCASE("tight rays outrun the simulation and stay vacuously clean") {
    const auto rep = ray_region_check(traj, p, sc, 0.05, 0.1);
    REQUIRE(rep.clauses.size() == 4);
    CHECK(rep.clauses[0].clause == "a_empty_beyond_fast_rays");
    CHECK(rep.clauses[0].applicable);
    CHECK(rep.clauses[0].pass);
    CHECK(rep.clauses[0].measured == 0.0);  // domain never reaches the ray
    CHECK_FALSE(rep.clauses[1].applicable);  // slow ray outside the domain
    CHECK_FALSE(rep.clauses[2].applicable);  // band regime needs lambda < d
    CHECK_FALSE(rep.clauses[3].applicable);  // no coexistence equilibrium
    CHECK(rep.all_applicable_pass);
  }
  SUBCASE("widening eps pulls the slow rays inside the fronts") {
    const auto rep = ray_region_check(traj, p, sc, 1.5, 0.1);
    const auto& floor_clause = rep.clauses[1];
    REQUIRE(floor_clause.applicable);
    CHECK(floor_clause.pass);  // plateau sits above lambda - b/m = 1
    CHECK(rep.all_applicable_pass);
  }
}

TEST_CASE("equilibrium contraction clause on a coexistence run") {
  const ModelParams p = coexistence_params();
  const SolverConfig cfg = quick_config(129, 12.0);
  const auto init = cosine_initial_data(1.0, 129, 1.0, 129);
  const auto traj = run(p, init, cfg);
  const auto sc = speed_constants(p, apriori_bounds(p, init).M2);
  REQUIRE(sc.defined);

  const auto rep = ray_region_check(traj, p, sc, 1.2, 0.1);
  const auto& contraction = rep.clauses[3];
  REQUIRE(contraction.applicable);
  CHECK(contraction.pass);
  CHECK(contraction.measured <= contraction.target);
}

TEST_CASE("tail speeds sit inside the semi-wave brackets") {
  const ModelParams p = benchmark_params();
  const SolverConfig cfg = quick_config(257, 10.0);
  const auto traj = run(p, cosine_initial_data(1.0, 257, 1.0, 257), cfg);
  const auto rep = speed_bounds_check(traj, p);
  CHECK(rep.h_ok);
  CHECK(rep.g_ok);
  CHECK(rep.h_lo < rep.h_hi);
  CHECK(rep.g_lo < rep.g_hi);
  CHECK(rep.h_fit.r2 > 0.999);
  CHECK(rep.g_fit.r2 > 0.999);
  CHECK(rep.widen == doctest::Approx(0.05));
}

}  // TEST_SUITE
