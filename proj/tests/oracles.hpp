// Copyright 2026 The bcodex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent closed-form oracles used by the test suites. Everything here is
// textbook math implemented without the library under test.

#ifndef BCODEX_TESTS_ORACLES_HPP
#define BCODEX_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.141592653589793238462643;

/// E[n^ell] for n ~ Poisson(mean), by direct convergent summation.
inline double poisson_moment(double mean, int ell) {
  if (mean == 0.0) return ell == 0 ? 1.0 : 0.0;
  double p = std::exp(-mean);  // P(n = 0)
  double acc = 0.0;
  for (int n = 1; n < 100000; ++n) {
    p *= mean / n;
    double term = p * std::pow(static_cast<double>(n), ell);
    acc += term;
    if (n > mean && term < 1e-18 * (acc + 1e-300)) break;
  }
  return acc;
}

/// <alpha|beta> for coherent states.
inline std::complex<double> coherent_overlap(std::complex<double> a, std::complex<double> b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

/// sum_n rho^n psi_n(x) psi_n(y) in closed form (|rho| < 1), psi_n the
/// orthonormal Hermite functions.
inline double mehler_kernel(double rho, double x, double y) {
  double r2 = rho * rho;
  return std::exp(2.0 * x * y * rho / (1.0 - r2) -
                  (x * x + y * y) * (1.0 + r2) / (2.0 * (1.0 - r2))) /
         std::sqrt(kPi * (1.0 - r2));
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// P(lo < X < hi) for X ~ N(0, sigma^2).
inline double gauss_interval_mass(double lo, double hi, double sigma) {
  return normal_cdf(hi / sigma) - normal_cdf(lo / sigma);
}

/// Exact binomial coefficient as a double (Pascal recurrence).
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
  return acc;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("fit_line: bad input");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  LineFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, mean_y = sy / n, ss_tot = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double pred = f.slope * xs[i] + f.intercept;
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

/// Argmin of f over a uniform grid on [lo, hi] with the given step count.
inline double grid_argmin(const std::function<double(double)>& f, double lo, double hi,
                          int steps) {
  double best_x = lo, best_v = f(lo);
  for (int i = 1; i <= steps; ++i) {
    double x = lo + (hi - lo) * i / steps;
    double v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

/// Orthonormal Hermite functions psi_0..psi_nmax at x (recurrence, no library).
inline std::vector<double> hermites(int nmax, double x) {
  std::vector<double> out(static_cast<size_t>(nmax) + 1);
  out[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (nmax == 0) return out;
  out[1] = x * std::sqrt(2.0) * out[0];
  for (int n = 1; n < nmax; ++n)
    out[static_cast<size_t>(n) + 1] = x * std::sqrt(2.0 / (n + 1)) * out[n] -
                                      std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  return out;
}

}  // namespace oracle

#endif  // BCODEX_TESTS_ORACLES_HPP
