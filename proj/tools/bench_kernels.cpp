// Timing harness for the grid kernels: serial reference vs the OpenMP
// path, plus a whole-run comparison. Also cross-checks that both backends
// produce bit-identical output, since the solver relies on that.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "twofront/fbsolver.hpp"
#include "twofront/kernels.hpp"
#include "twofront/model.hpp"

namespace {

using twofront::Backend;
namespace kn = twofront::kernels;

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

// Best-of-reps wall time in milliseconds for one call of fn.
template <class Fn>
double best_ms(Fn fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    fn();
    const double t1 = now_ms();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

std::vector<double> bump_profile(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(i) / static_cast<double>(n - 1);
    w[i] = 0.9 * std::cos(1.5707963267948966 * y) + 0.05 * std::sin(7.0 * y);
  }
  w[n - 1] = 0.0;
  return w;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct Row {
  const char* name;
  double serial_ms;
  double openmp_ms;
  double diff;
};

void print_rows(std::size_t n, const std::vector<Row>& rows) {
  std::printf("n = %zu\n", n);
  std::printf("  %-18s %12s %12s %9s %12s\n", "kernel", "serial (ms)",
              "openmp (ms)", "speedup", "max |diff|");
  for (const Row& r : rows) {
    std::printf("  %-18s %12.4f %12.4f %8.2fx %12g\n", r.name, r.serial_ms,
                r.openmp_ms, r.serial_ms / r.openmp_ms, r.diff);
  }
}

void bench_size(std::size_t n, int reps) {
  const std::vector<double> w = bump_profile(n);
  const std::vector<double> other = bump_profile(n);
  std::vector<double> lo(n), di(n), up(n), out_s(n), out_p(n);
  const double r = 0.37;
  std::vector<Row> rows;

  // build_diffusion_rows: same buffers reused, compare diag.
  const double t_build_s = best_ms(
      [&] { kn::build_diffusion_rows(r, lo, di, up, Backend::serial); }, reps);
  out_s = di;
  const double t_build_p = best_ms(
      [&] { kn::build_diffusion_rows(r, lo, di, up, Backend::openmp); }, reps);
  rows.push_back({"diffusion_rows", t_build_s, t_build_p, max_abs_diff(out_s, di)});

  const double t_interp_s = best_ms(
      [&] { kn::cross_interpolate(2.0, 1.3, other, out_s, Backend::serial); },
      reps);
  const double t_interp_p = best_ms(
      [&] { kn::cross_interpolate(2.0, 1.3, other, out_p, Backend::openmp); },
      reps);
  rows.push_back(
      {"cross_interpolate", t_interp_s, t_interp_p, max_abs_diff(out_s, out_p)});

  auto logistic = [](double a, double b) { return a * (1.0 - a) - 0.4 * a * b; };
  const double t_stage_s = best_ms(
      [&] {
        kn::explicit_stage(w, other, 2.0, 0.3, 1e-3, logistic, out_s,
                           Backend::serial);
      },
      reps);
  const double t_stage_p = best_ms(
      [&] {
        kn::explicit_stage(w, other, 2.0, 0.3, 1e-3, logistic, out_p,
                           Backend::openmp);
      },
      reps);
  rows.push_back(
      {"explicit_stage", t_stage_s, t_stage_p, max_abs_diff(out_s, out_p)});

  double m_s = 0.0, m_p = 0.0;
  const double t_max_s =
      best_ms([&] { m_s = kn::max_element_value(w, Backend::serial); }, reps);
  const double t_max_p =
      best_ms([&] { m_p = kn::max_element_value(w, Backend::openmp); }, reps);
  rows.push_back({"max_element", t_max_s, t_max_p, std::abs(m_s - m_p)});

  print_rows(n, rows);
}

// One coupled run on each backend; they must agree to the last bit, so the
// interesting numbers are the wall times.
void bench_run(int /*reps*/) {
  twofront::ModelParams p;
  p.lambda = 1.5;
  p.b = 1.0;
  p.m = 1.0;
  p.c = 1.0;
  p.d = 1.0;
  p.mu = 2.0;
  p.rho = 2.0;
  p.h0 = 2.0;
  p.g0 = 1.5;

  twofront::SolverConfig cfg;
  cfg.n_u = 4097;
  cfg.n_v = 4097;
  cfg.dt_init = 2.5e-4;
  cfg.t_end = 2.0;
  cfg.snapshot_every = 10.0;

  const auto init = twofront::cosine_initial_data(0.8, cfg.n_u, 0.8, cfg.n_v);

  cfg.backend = Backend::serial;
  const double t0 = now_ms();
  const auto traj_s = twofront::run(p, init, cfg);
  const double t1 = now_ms();
  cfg.backend = Backend::openmp;
  const auto traj_p = twofront::run(p, init, cfg);
  const double t2 = now_ms();

  const double dh = std::abs(traj_s.h_series.back() - traj_p.h_series.back());
  const double dg = std::abs(traj_s.g_series.back() - traj_p.g_series.back());
  std::printf("\ncoupled run, n = %zu, %zu steps\n", cfg.n_u,
              traj_s.times.size() - 1);
  std::printf("  serial  %10.1f ms\n", t1 - t0);
  std::printf("  openmp  %10.1f ms   (%.2fx)\n", t2 - t1, (t1 - t0) / (t2 - t1));
  std::printf("  |h diff| = %g, |g diff| = %g\n", dh, dg);
  if (dh != 0.0 || dg != 0.0) {
    std::printf("BACKEND MISMATCH\n");
    std::exit(1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 25;
  if (argc > 1) reps = std::atoi(argv[1]);
#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n\n", omp_get_max_threads());
#else
  std::printf("openmp: not compiled in (openmp backend runs serially)\n\n");
#endif
  for (std::size_t n : {512u, 4096u, 32768u, 131072u}) bench_size(n, reps);
  bench_run(reps);
  return 0;
}
