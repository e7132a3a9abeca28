#pragma once

#include <cstddef>
#include <span>

namespace twofront {

// Which loop implementation the solver uses. The serial path is the
// reference; the openmp path must produce bit-identical results (the
// project is compiled with -ffp-contract=off and every parallel loop is
// either pointwise or an exact reduction). When the project is built
// without OpenMP the openmp backend degrades to serial execution.
enum class Backend { serial, openmp };

namespace kernels {

// Loops shorter than this are not worth forking a team for.
inline constexpr std::size_t parallel_grain = 2048;

// Fills the three diagonals of the implicit diffusion matrix for one
// species on a normalized grid of n points, r = dt * d / (front * dy)^2.
// Row 0 encodes a reflected-ghost Neumann condition (1 + 2r, -2r);
// row n-1 pins the value at the moving front to zero.
// lower[0] and upper[n-1] are written as zero and ignored by the solver.
void build_diffusion_rows(double r, std::span<double> lower,
                          std::span<double> diag, std::span<double> upper,
                          Backend backend);

// In-place tridiagonal solve (x holds the rhs on entry, the solution on
// exit). Forward elimination is a loop-carried recurrence, so this kernel
// is always serial; it is O(n) and never the hot spot.
void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<double> x);

// Samples the other species' profile at this species' grid positions.
// Both profiles live on normalized grids; physical position of node i of
// the destination grid is y_i * self_front. Piecewise-linear, which keeps
// interpolated values inside [min, max] of the source nodes; positions
// beyond the other front map to zero. An empty source fills with zeros.
void cross_interpolate(double self_front, double other_front,
                       std::span<const double> other, std::span<double> out,
                       Backend backend);

double max_element_value(std::span<const double> w, Backend backend);

// Zeroes every negative entry; returns how many were below report_below
// (a strictly negative threshold) so the caller can log real undershoots
// rather than harmless rounding dust.
std::size_t clamp_nonnegative(std::span<double> w, double report_below,
                              Backend backend);

bool all_finite(std::span<const double> w, Backend backend);

// Second-order one-sided derivative at the y = 1 end of a normalized
// profile with w[n-1] = 0: (-4 w[n-2] + w[n-3]) / (2 dy).
double front_gradient(std::span<const double> w, double dy);

// Explicit half of the time step: out = w + dt * (advection + reaction),
// evaluated pointwise. The advection term y * (front_speed / front) * w_y
// uses centered differences; it vanishes identically at y = 0 and the
// Dirichlet row y = 1 is reset to zero. react(w_i, other_i) supplies the
// local reaction rate.
template <class Reaction>
void explicit_stage(std::span<const double> w, std::span<const double> other,
                    double front, double front_speed, double dt,
                    Reaction react, std::span<double> out, Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
  const double dy = 1.0 / static_cast<double>(n - 1);
  const double adv = front_speed / front;
  auto row = [&](std::ptrdiff_t i) {
    const double y = static_cast<double>(i) * dy;
    const double wy = (w[i + 1] - w[i - 1]) / (2.0 * dy);
    out[i] = w[i] + dt * (y * adv * wy + react(w[i], other[i]));
  };
  if (backend == Backend::openmp) {
#pragma omp parallel for if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 1; i < n - 1; ++i) row(i);
  } else {
    for (std::ptrdiff_t i = 1; i < n - 1; ++i) row(i);
  }
  out[0] = w[0] + dt * react(w[0], other[0]);
  out[n - 1] = 0.0;
}

}  // namespace kernels
}  // namespace twofront
