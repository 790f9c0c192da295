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

#include "bcodex/shift.hpp"

#include <Eigen/SVD>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "bcodex/rng.hpp"

namespace bcodex::cv {

namespace {
constexpr double kPi = std::numbers::pi;
}

RealMat omega(int n_modes) {
  require(n_modes >= 1, "omega: need at least one mode");
  RealMat w = RealMat::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    w(2 * m, 2 * m + 1) = 1.0;
    w(2 * m + 1, 2 * m) = -1.0;
  }
  return w;
}

double symplectic_form(const RealVec& u, const RealVec& v) {
  require(u.size() == v.size() && u.size() % 2 == 0, "symplectic_form: dimension mismatch");
  double acc = 0.0;
  for (int m = 0; 2 * m < u.size(); ++m)
    acc += u(2 * m) * v(2 * m + 1) - u(2 * m + 1) * v(2 * m);
  return acc;
}

SymplecticOp SymplecticOp::make(int n_modes, RealMat m) {
  require(n_modes >= 1, "SymplecticOp: need at least one mode");
  require(m.rows() == 2 * n_modes && m.cols() == 2 * n_modes,
          "SymplecticOp: matrix must be 2n x 2n");
  RealMat w = omega(n_modes);
  double defect = (m.transpose() * w * m - w).cwiseAbs().maxCoeff();
  require(defect < 1e-12, "SymplecticOp: matrix is not symplectic");
  SymplecticOp s;
  s.n_modes = n_modes;
  s.m = std::move(m);
  return s;
}

SymplecticOp SymplecticOp::inverse() const {
  // S^{-1} = -Omega S^T Omega; exact for integer-entry gates.
  RealMat w = omega(n_modes);
  return SymplecticOp::make(n_modes, -w * m.transpose() * w);
}

SymplecticOp csum(int control, int target, int n_modes) {
  require(n_modes >= 2, "csum: need at least two modes");
  require(control >= 0 && control < n_modes && target >= 0 && target < n_modes &&
              control != target,
          "csum: bad mode indices");
  RealMat m = RealMat::Identity(2 * n_modes, 2 * n_modes);
  m(2 * target, 2 * control) = 1.0;       // x_target += x_control
  m(2 * control + 1, 2 * target + 1) = -1.0;  // p_control -= p_target
  return SymplecticOp::make(n_modes, m);
}

RealVec conjugated_shift(const SymplecticOp& s, const RealVec& delta) {
  require(delta.size() == 2 * s.n_modes, "conjugated_shift: dimension mismatch");
  return s.inverse().m * delta;
}

double ml_estimate(double x_obs) { return -0.5 * x_obs; }

NullifierSet four_mode_nullifiers() {
  NullifierSet ns;
  ns.n_modes = 4;
  ns.rows = RealMat::Zero(3, 8);
  // x1 - x2
  ns.rows(0, 0) = 1.0;
  ns.rows(0, 2) = -1.0;
  // x3 - x4
  ns.rows(1, 4) = 1.0;
  ns.rows(1, 6) = -1.0;
  // p1 + p2 - p3 - p4
  ns.rows(2, 1) = 1.0;
  ns.rows(2, 3) = 1.0;
  ns.rows(2, 5) = -1.0;
  ns.rows(2, 7) = -1.0;
  ns.logicals = RealMat::Zero(2, 8);
  for (int m = 0; m < 4; ++m) {
    ns.logicals(0, 2 * m) = 0.5;      // logical x direction
    ns.logicals(1, 2 * m + 1) = 0.5;  // logical p direction
  }
  return ns;
}

RealVec syndrome(const NullifierSet& ns, const RealVec& direction) {
  require(direction.size() == 2 * ns.n_modes, "syndrome: dimension mismatch");
  RealVec out(ns.rows.rows());
  for (int r = 0; r < ns.rows.rows(); ++r)
    out(r) = symplectic_form(RealVec(ns.rows.row(r)), direction);
  return out;
}

bool displacement_detectable(const NullifierSet& ns, const RealVec& direction, double tol) {
  return syndrome(ns, direction).cwiseAbs().maxCoeff() > tol;
}

RealVec transversal_logical_direction(double q) {
  RealVec dir = RealVec::Zero(8);
  dir(1) = -q;  // p1 coefficient
  dir(3) = -q;  // p2 coefficient
  return dir;
}

namespace {

// Appends every `size`-element subset of {0..n-1} to `out`.
void subsets(int n, int size, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(size);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == size) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n - (size - depth); ++i) {
      cur[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  if (size == 0) out.push_back({});
}

}  // namespace

int code_distance(const NullifierSet& ns, double tol) {
  const int n = ns.n_modes;
  for (int w = 1; w <= n; ++w) {
    std::vector<std::vector<int>> mode_sets;
    subsets(n, w, mode_sets);
    for (const auto& modes : mode_sets) {
      // Syndrome and logical action restricted to the chosen modes; a
      // column pair (x_m, p_m) per mode. Symplectic pairing swaps x and p.
      RealMat syn(ns.rows.rows(), 2 * w);
      RealMat act(ns.logicals.rows(), 2 * w);
      for (int c = 0; c < w; ++c) {
        int m = modes[c];
        for (int r = 0; r < ns.rows.rows(); ++r) {
          syn(r, 2 * c) = -ns.rows(r, 2 * m + 1);   // d/d a_m (x coefficient)
          syn(r, 2 * c + 1) = ns.rows(r, 2 * m);    // d/d b_m (p coefficient)
        }
        for (int r = 0; r < ns.logicals.rows(); ++r) {
          act(r, 2 * c) = -ns.logicals(r, 2 * m + 1);
          act(r, 2 * c + 1) = ns.logicals(r, 2 * m);
        }
      }
      Eigen::JacobiSVD<RealMat> svd(syn, Eigen::ComputeFullV);
      int rank = 0;
      for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1e-10) ++rank;
      for (int i = rank; i < 2 * w; ++i) {
        RealVec dir = svd.matrixV().col(i);
        if ((act * dir).cwiseAbs().maxCoeff() > tol) return w;
      }
    }
  }
  return 0;
}

GridLattice gkp_lattice(int N) {
  require(N >= 1, "gkp_lattice: N must be >= 1");
  GridLattice lat;
  double spacing = std::sqrt(2.0 * kPi * N);
  lat.generators = RealMat::Zero(2, 2);
  lat.generators(0, 0) = spacing;  // x-shift generator
  lat.generators(1, 1) = spacing;  // p-shift generator
  lat.logicals = lat.generators / static_cast<double>(N);
  return lat;
}

GridLattice gkp_rectangular_lattice(double lam) {
  require(lam > 0, "gkp_rectangular_lattice: aspect ratio must be positive");
  GridLattice lat;
  lat.generators = RealMat::Zero(2, 2);
  lat.generators(0, 0) = lam * std::sqrt(2.0 * kPi);
  lat.generators(1, 1) = std::sqrt(2.0 * kPi) / lam;
  lat.logicals = lat.generators;
  return lat;
}

RealMat lattice_commutation(const GridLattice& lat) {
  const int g = static_cast<int>(lat.generators.rows());
  RealMat prod(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      prod(i, j) = symplectic_form(RealVec(lat.generators.row(i)),
                                   RealVec(lat.generators.row(j))) /
                   (2.0 * kPi);
  return prod;
}

namespace {

struct ChunkSums {
  double sx = 0, sx2 = 0, sx3 = 0, sx4 = 0;
  double sp = 0, sp2 = 0, sp3 = 0, sp4 = 0;
  std::uint64_t wraps = 0, flips = 0;
  double max_ident = 0.0;
};

constexpr std::uint64_t kChunk = 8192;

// Runs `body(sample_index, chunk_sums)` over all samples, chunked, with the
// reduction done in chunk order so results do not depend on thread count.
template <typename Body>
ChunkSums run_chunked(std::uint64_t n_samples, int threads, Body body) {
  const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partial(n_chunks);
  int workers = std::max(1, std::min<int>(threads, static_cast<int>(
                                                       std::min<std::uint64_t>(n_chunks, 64))));
  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      std::uint64_t lo = c * kChunk;
      std::uint64_t hi = std::min(n_samples, lo + kChunk);
      ChunkSums& s = partial[c];
      for (std::uint64_t i = lo; i < hi; ++i) body(i, s);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  ChunkSums total;
  for (const ChunkSums& s : partial) {
    total.sx += s.sx;
    total.sx2 += s.sx2;
    total.sx3 += s.sx3;
    total.sx4 += s.sx4;
    total.sp += s.sp;
    total.sp2 += s.sp2;
    total.sp3 += s.sp3;
    total.sp4 += s.sp4;
    total.wraps += s.wraps;
    total.flips += s.flips;
    total.max_ident = std::max(total.max_ident, s.max_ident);
  }
  return total;
}

// Sample variance and its standard error from raw power sums.
void variance_with_stderr(double s1, double s2, double s3, double s4, std::uint64_t n,
                          double& var, double& se) {
  const double nn = static_cast<double>(n);
  double mean = s1 / nn;
  double m2 = (s2 - nn * mean * mean) / nn;
  var = m2 * nn / (nn - 1.0);
  double m4 =
      (s4 - 4.0 * mean * s3 + 6.0 * mean * mean * s2 - 3.0 * nn * mean * mean * mean * mean) /
      nn;
  double se2 = (m4 - var * var * (nn - 3.0) / (nn - 1.0)) / nn;
  se = std::sqrt(std::max(0.0, se2));
}

void finalize_common(ShiftMcResult& r, const ChunkSums& t) {
  r.sum_x = t.sx;
  r.sum_x2 = t.sx2;
  r.sum_x3 = t.sx3;
  r.sum_x4 = t.sx4;
  r.sum_p = t.sp;
  r.sum_p2 = t.sp2;
  r.sum_p3 = t.sp3;
  r.sum_p4 = t.sp4;
  r.wraps = t.wraps;
  r.flips = t.flips;
  r.max_identity_residual = t.max_ident;
  const double nn = static_cast<double>(r.n_samples);
  variance_with_stderr(t.sx, t.sx2, t.sx3, t.sx4, r.n_samples, r.residual_var_x,
                       r.residual_var_x_stderr);
  variance_with_stderr(t.sp, t.sp2, t.sp3, t.sp4, r.n_samples, r.residual_var_p,
                       r.residual_var_p_stderr);
  r.wrap_rate = static_cast<double>(t.wraps) / nn;
  r.flip_rate = static_cast<double>(t.flips) / nn;
  r.flip_rate_stderr = std::sqrt(std::max(0.0, r.flip_rate * (1.0 - r.flip_rate) / nn));
}

}  // namespace

ShiftMcResult gkp_repetition_mc(double sigma, std::uint64_t n_samples, std::uint64_t seed,
                                int threads) {
  require(sigma > 0, "gkp_repetition_mc: sigma must be positive");
  require(n_samples >= 2, "gkp_repetition_mc: need at least two samples");
  require(threads >= 1, "gkp_repetition_mc: threads must be >= 1");

  const RealMat sinv = csum(0, 1, 2).inverse().m;
  const double wrap_edge = 0.5 * std::sqrt(2.0 * kPi);

  ChunkSums total = run_chunked(n_samples, threads, [&](std::uint64_t i, ChunkSums& s) {
    CounterRng rng(seed, i);
    double dx1 = sigma * rng.normal(0);
    double dp1 = sigma * rng.normal(1);
    double dx2 = sigma * rng.normal(2);
    double dp2 = sigma * rng.normal(3);
    Eigen::Vector4d delta(dx1, dp1, dx2, dp2);
    Eigen::Vector4d pulled = sinv * delta;  // shifts seen before the gate
    double x_obs = pulled(2);
    double p_obs = pulled(3);
    double rx = pulled(0) - ml_estimate(x_obs);
    double rp = pulled(1) - p_obs;
    // Algebraic forms of the same residuals, tracked as a cross-check.
    double ix = std::abs(rx - 0.5 * (dx1 + dx2));
    double ip = std::abs(rp - dp1);
    s.max_ident = std::max(s.max_ident, std::max(ix, ip));
    if (std::abs(x_obs) > wrap_edge) ++s.wraps;
    s.sx += rx;
    s.sx2 += rx * rx;
    s.sx3 += rx * rx * rx;
    s.sx4 += rx * rx * rx * rx;
    s.sp += rp;
    s.sp2 += rp * rp;
    s.sp3 += rp * rp * rp;
    s.sp4 += rp * rp * rp * rp;
  });

  ShiftMcResult r;
  r.sigma = sigma;
  r.n_samples = n_samples;
  r.seed = seed;
  r.threads = threads;
  finalize_common(r, total);
  r.analytic_flip_rate = std::numeric_limits<double>::quiet_NaN();
  return r;
}

ShiftMcResult gkp_bin_mc(double sigma, std::uint64_t n_samples, std::uint64_t seed,
                         int threads) {
  require(sigma > 0, "gkp_bin_mc: sigma must be positive");
  require(n_samples >= 2, "gkp_bin_mc: need at least two samples");
  require(threads >= 1, "gkp_bin_mc: threads must be >= 1");

  const double root_pi = std::sqrt(kPi);

  ChunkSums total = run_chunked(n_samples, threads, [&](std::uint64_t i, ChunkSums& s) {
    CounterRng rng(seed, i);
    double u = sigma * rng.normal(0);
    long long k = std::llround(u / root_pi);
    double resid = u - static_cast<double>(k) * root_pi;  // centered syndrome
    if (k != 0) ++s.wraps;
    if (k % 2 != 0) ++s.flips;
    s.sx += resid;
    s.sx2 += resid * resid;
    s.sx3 += resid * resid * resid;
    s.sx4 += resid * resid * resid * resid;
  });

  ShiftMcResult r;
  r.sigma = sigma;
  r.n_samples = n_samples;
  r.seed = seed;
  r.threads = threads;
  finalize_common(r, total);
  // p sums stay zero: the binning model acts on a single quadrature.
  r.residual_var_p = 0.0;
  r.residual_var_p_stderr = 0.0;
  r.analytic_flip_rate = gkp_bin_flip_rate_analytic(sigma);
  return r;
}

double gkp_bin_flip_rate_analytic(double sigma) {
  require(sigma > 0, "gkp_bin_flip_rate_analytic: sigma must be positive");
  const double root_pi = std::sqrt(kPi);
  const double inv = 1.0 / (sigma * std::numbers::sqrt2);
  double acc = 0.0;
  for (long long m = 1; m < 4000; m += 2) {
    double a = (static_cast<double>(m) - 0.5) * root_pi * inv;
    double b = (static_cast<double>(m) + 0.5) * root_pi * inv;
    double term = 0.5 * (std::erfc(a) - std::erfc(b));
    acc += term;
    if (term < 1e-18 * (acc + 1e-300)) break;
  }
  return 2.0 * acc;
}

bool gkp_bin_exact_on_grid(int points) {
  require(points >= 1, "gkp_bin_exact_on_grid: need at least one point");
  const double root_pi = std::sqrt(kPi);
  for (int i = 1; i <= points; ++i) {
    double u = -0.5 * root_pi + root_pi * i / (points + 1);
    long long k = std::llround(u / root_pi);
    double resid = u - static_cast<double>(k) * root_pi;
    if (k != 0) return false;
    if (resid != u) return false;
  }
  return true;
}

}  // namespace bcodex::cv
