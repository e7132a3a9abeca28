#include "twofront/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twofront {

std::optional<std::string> ModelParams::validate() const {
  struct Named {
    const char* name;
    double value;
  };
  const Named fields[] = {{"lambda", lambda}, {"b", b},     {"m", m},
                          {"d", d},           {"c", c},     {"mu", mu},
                          {"rho", rho},       {"h0", h0},   {"g0", g0}};
  for (const auto& f : fields) {
    if (!(f.value > 0.0) || !std::isfinite(f.value)) {
      return std::string(f.name) + " must be positive";
    }
  }
  if (h0 < g0) return "h0 must be >= g0";
  return std::nullopt;
}

namespace {

std::optional<std::string> check_profile(const std::vector<double>& w,
                                         const char* name) {
  const std::size_t n = w.size();
  if (n < 3) return std::string(name) + " needs at least 3 samples";
  if (w[n - 1] != 0.0) {
    return std::string(name) + " must end at exactly 0";
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
      return std::string(name) + " must be positive before the front";
    }
  }
  // Flatness at x = 0: the first increment of a profile with zero slope
  // there is O(1/(n-1)^2) relative to its peak.
  const double peak = *std::max_element(w.begin(), w.end());
  const double dn = static_cast<double>(n - 1);
  if (std::abs(w[1] - w[0]) > 5.0 * peak / (dn * dn)) {
    return std::string(name) + " must be flat at x = 0";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> InitialData::validate() const {
  if (auto err = check_profile(u0, "u0")) return err;
  if (auto err = check_profile(v0, "v0")) return err;
  return std::nullopt;
}

ReactionRates reaction_terms(double u_val, double v_val,
                             const ModelParams& p) {
  const double den = u_val + p.m * v_val;
  double capture = 0.0;
  double conversion = 0.0;
  if (den > delta_ratio) {
    capture = p.b * v_val / den;
    conversion = p.c * u_val / den;
  }
  return {u_val * (p.lambda - u_val - capture),
          v_val * (1.0 - v_val + conversion)};
}

RateBrackets sandwich_rates(double u_val, double v_val,
                            const ModelParams& p) {
  const double floor_growth = std::max(0.0, p.lambda - p.b / p.m);
  return {floor_growth * u_val - u_val * u_val,
          p.lambda * u_val - u_val * u_val,
          v_val - v_val * v_val,
          (1.0 + p.c) * v_val - v_val * v_val};
}

namespace {

double min_slope(const std::vector<double>& w, double radius) {
  const double dx = radius / static_cast<double>(w.size() - 1);
  double lo = (w[1] - w[0]) / dx;
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    lo = std::min(lo, (w[i + 1] - w[i]) / dx);
  }
  return lo;
}

}  // namespace

AprioriBounds apriori_bounds(const ModelParams& p, const InitialData& init) {
  AprioriBounds out;
  out.M1 = std::max(p.lambda,
                    *std::max_element(init.u0.begin(), init.u0.end()));
  out.M2 = std::max(1.0 + p.c,
                    *std::max_element(init.v0.begin(), init.v0.end()));
  out.M3 = 2.0 * p.mu *
           std::max(out.M1 * std::sqrt(p.lambda / 2.0),
                    -min_slope(init.u0, p.h0));
  out.M4 = 2.0 * p.rho *
           std::max(out.M2 * std::sqrt((1.0 + p.c) / (2.0 * p.d)),
                    -min_slope(init.v0, p.g0));
  return out;
}

std::vector<double> cosine_profile(double amplitude, std::size_t n) {
  std::vector<double> w(n);
  const double dn = static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    w[i] = amplitude *
           std::cos(std::numbers::pi * static_cast<double>(i) / (2.0 * dn));
  }
  w[n - 1] = 0.0;
  return w;
}

InitialData cosine_initial_data(double u_amplitude, std::size_t n_u,
                                double v_amplitude, std::size_t n_v) {
  return {cosine_profile(u_amplitude, n_u), cosine_profile(v_amplitude, n_v)};
}

}  // namespace twofront
