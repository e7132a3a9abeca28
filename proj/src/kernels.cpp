#include "twofront/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace twofront::kernels {

void build_diffusion_rows(double r, std::span<double> lower,
                          std::span<double> diag, std::span<double> upper,
                          Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
  auto row = [&](std::ptrdiff_t i) {
    lower[i] = -r;
    diag[i] = 1.0 + 2.0 * r;
    upper[i] = -r;
  };
  if (backend == Backend::openmp) {
#pragma omp parallel for if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 1; i < n - 1; ++i) row(i);
  } else {
    for (std::ptrdiff_t i = 1; i < n - 1; ++i) row(i);
  }
  lower[0] = 0.0;
  diag[0] = 1.0 + 2.0 * r;
  upper[0] = -2.0 * r;
  lower[n - 1] = 0.0;
  diag[n - 1] = 1.0;
  upper[n - 1] = 0.0;
}

void thomas_solve(std::span<const double> lower, std::span<const double> diag,
                  std::span<const double> upper, std::span<double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(diag.size());
  // Scratch for the modified upper diagonal; sized for the solver grids in
  // use here, so a thread_local vector avoids per-call allocation.
  thread_local std::vector<double> cp;
  cp.resize(static_cast<std::size_t>(n));
  cp[0] = upper[0] / diag[0];
  x[0] = x[0] / diag[0];
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    const double m = 1.0 / (diag[i] - lower[i] * cp[i - 1]);
    cp[i] = upper[i] * m;
    x[i] = (x[i] - lower[i] * x[i - 1]) * m;
  }
  for (std::ptrdiff_t i = n - 2; i >= 0; --i) x[i] -= cp[i] * x[i + 1];
}

void cross_interpolate(double self_front, double other_front,
                       std::span<const double> other, std::span<double> out,
                       Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  if (other.empty() || other_front <= 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const std::ptrdiff_t no = static_cast<std::ptrdiff_t>(other.size());
  const double dy = 1.0 / static_cast<double>(n - 1);
  const double scale = self_front / other_front;
  auto sample = [&](std::ptrdiff_t i) {
    const double z = static_cast<double>(i) * dy * scale;
    if (z >= 1.0) {
      out[i] = 0.0;
      return;
    }
    const double t = z * static_cast<double>(no - 1);
    const std::ptrdiff_t j =
        std::min(static_cast<std::ptrdiff_t>(t), no - 2);
    const double f = t - static_cast<double>(j);
    out[i] = other[j] + f * (other[j + 1] - other[j]);
  };
  if (backend == Backend::openmp) {
#pragma omp parallel for if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 0; i < n; ++i) sample(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) sample(i);
  }
}

double max_element_value(std::span<const double> w, Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
  double m = w[0];
  if (backend == Backend::openmp) {
#pragma omp parallel for reduction(max : m) \
    if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, w[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, w[i]);
  }
  return m;
}

std::size_t clamp_nonnegative(std::span<double> w, double report_below,
                              Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
  long long cnt = 0;
  if (backend == Backend::openmp) {
#pragma omp parallel for reduction(+ : cnt) \
    if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (w[i] < 0.0) {
        if (w[i] < report_below) ++cnt;
        w[i] = 0.0;
      }
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (w[i] < 0.0) {
        if (w[i] < report_below) ++cnt;
        w[i] = 0.0;
      }
    }
  }
  return static_cast<std::size_t>(cnt);
}

bool all_finite(std::span<const double> w, Backend backend) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
  int ok = 1;
  if (backend == Backend::openmp) {
#pragma omp parallel for reduction(&& : ok) \
    if (static_cast<std::size_t>(n) >= parallel_grain)
    for (std::ptrdiff_t i = 0; i < n; ++i) ok = ok && std::isfinite(w[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) ok = ok && std::isfinite(w[i]);
  }
  return ok != 0;
}

double front_gradient(std::span<const double> w, double dy) {
  const std::size_t n = w.size();
  return (-4.0 * w[n - 2] + w[n - 3]) / (2.0 * dy);
}

}  // namespace twofront::kernels
