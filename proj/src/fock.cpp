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

#include "bcodex/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace bcodex {

namespace {

constexpr double kPi = 3.141592653589793238462643;

void check_cutoffs(const std::vector<int>& cutoffs) {
  require(!cutoffs.empty(), "cutoff list must be non-empty");
  for (int c : cutoffs) require(c >= 1, "each cutoff must be >= 1");
}

double compute_tail_mass(const std::vector<int>& cutoffs, const Vec& amps) {
  std::vector<int> band_start(cutoffs.size());
  for (size_t m = 0; m < cutoffs.size(); ++m)
    band_start[m] = cutoffs[m] - (cutoffs[m] + 9) / 10;
  double mass = 0.0;
  for (int i = 0; i < amps.size(); ++i) {
    std::vector<int> ns = decode_index(i, cutoffs);
    for (size_t m = 0; m < cutoffs.size(); ++m) {
      if (ns[m] >= band_start[m]) {
        mass += std::norm(amps[i]);
        break;
      }
    }
  }
  return mass;
}

}  // namespace

int total_dim(const std::vector<int>& cutoffs) {
  check_cutoffs(cutoffs);
  long long d = 1;
  for (int c : cutoffs) {
    d *= c;
    require(d <= (1 << 24), "total dimension too large");
  }
  return static_cast<int>(d);
}

int flat_index(const std::vector<int>& ns, const std::vector<int>& cutoffs) {
  require(ns.size() == cutoffs.size(), "occupation list length must match cutoffs");
  int idx = 0;
  for (size_t m = 0; m < cutoffs.size(); ++m) {
    require(ns[m] >= 0 && ns[m] < cutoffs[m], "occupation outside cutoff");
    idx = idx * cutoffs[m] + ns[m];
  }
  return idx;
}

std::vector<int> decode_index(int idx, const std::vector<int>& cutoffs) {
  require(idx >= 0 && idx < total_dim(cutoffs), "flat index out of range");
  std::vector<int> ns(cutoffs.size());
  for (int m = static_cast<int>(cutoffs.size()) - 1; m >= 0; --m) {
    ns[m] = idx % cutoffs[m];
    idx /= cutoffs[m];
  }
  return ns;
}

FockVector FockVector::make(std::vector<int> cutoffs, Vec amps) {
  require(amps.size() == total_dim(cutoffs), "amplitude length must match cutoffs");
  require(amps.allFinite(), "amplitudes must be finite");
  FockVector v;
  v.tail_mass = compute_tail_mass(cutoffs, amps);
  v.cutoffs = std::move(cutoffs);
  v.amps = std::move(amps);
  return v;
}

FockVector FockVector::normalized() const {
  double n = amps.norm();
  require(n > 0.0, "cannot normalize the zero vector");
  FockVector out = FockVector::make(cutoffs, amps / n);
  out.warning = warning;
  return out;
}

FockOperator FockOperator::make(std::vector<int> cutoffs, Mat m) {
  int d = total_dim(cutoffs);
  require(m.rows() == d && m.cols() == d, "operator shape must match cutoffs");
  require(m.allFinite(), "operator entries must be finite");
  return {std::move(cutoffs), std::move(m)};
}

double FockOperator::unitarity_defect(int guard_levels) const {
  int d = dim() - guard_levels;
  require(d > 0, "guard excludes the whole space");
  Mat g = m.adjoint() * m - Mat::Identity(dim(), dim());
  return g.topLeftCorner(d, d).cwiseAbs().maxCoeff();
}

DensityOperator DensityOperator::make(std::vector<int> cutoffs, Mat m, double trace_tol) {
  int d = total_dim(cutoffs);
  require(m.rows() == d && m.cols() == d, "density shape must match cutoffs");
  require(m.allFinite(), "density entries must be finite");
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  require(herm < 1e-12, "density operator must be Hermitian (defect " + std::to_string(herm) + ")");
  double tr = m.trace().real();
  require(std::abs(tr - 1.0) <= trace_tol,
          "density trace " + std::to_string(tr) + " outside tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, "density operator must be PSD");
  return {std::move(cutoffs), std::move(m)};
}

DensityOperator DensityOperator::pure(const FockVector& psi) {
  Vec a = psi.amps / psi.amps.norm();
  return {psi.cutoffs, a * a.adjoint()};
}

// ---- states ---------------------------------------------------------------

FockVector fock_basis_state(const std::vector<int>& ns, const std::vector<int>& cutoffs) {
  Vec a = Vec::Zero(total_dim(cutoffs));
  a[flat_index(ns, cutoffs)] = 1.0;
  return FockVector::make(cutoffs, std::move(a));
}

FockVector fock_basis_state(int n, int cutoff) {
  return fock_basis_state(std::vector<int>{n}, std::vector<int>{cutoff});
}

FockVector coherent_state(cdouble alpha, int cutoff) {
  require(cutoff >= 1, "cutoff must be >= 1");
  double nbar = std::norm(alpha);
  require(nbar <= cutoff / 4.0, "coherent state needs |alpha|^2 <= cutoff/4");
  Vec a(cutoff);
  if (nbar == 0.0) {
    a.setZero();
    a[0] = 1.0;
  } else {
    double la = std::log(std::abs(alpha));
    double th = std::arg(alpha);
    for (int n = 0; n < cutoff; ++n) {
      double lg = -nbar / 2.0 + n * la - 0.5 * std::lgamma(n + 1.0);
      a[n] = std::exp(lg) * std::polar(1.0, n * th);
    }
  }
  FockVector v = FockVector::make(std::vector<int>{cutoff}, std::move(a));
  certify(v.tail_mass <= 1e-4, "coherent state truncation tail too large");
  v = v.normalized();
  if (v.tail_mass > 1e-8)
    v.warning = "coherent-state tail mass " + std::to_string(v.tail_mass) + " exceeds 1e-8";
  return v;
}

FockVector phase_state(double phi, int cutoff) {
  require(cutoff >= 1, "cutoff must be >= 1");
  Vec a(cutoff);
  double s = 1.0 / std::sqrt(static_cast<double>(cutoff));
  for (int n = 0; n < cutoff; ++n) a[n] = std::polar(s, phi * n);
  return FockVector::make(std::vector<int>{cutoff}, std::move(a));
}

// ---- operators ------------------------------------------------------------

FockOperator identity_op(int cutoff) {
  return FockOperator::make({cutoff}, Mat::Identity(cutoff, cutoff));
}

FockOperator lower_op(int cutoff) {
  Mat m = Mat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator raise_op(int cutoff) {
  Mat m = Mat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) m(n, n - 1) = std::sqrt(static_cast<double>(n));
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator number_op(int cutoff) {
  Mat m = Mat::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = n;
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator position_op(int cutoff) {
  Mat a = lower_op(cutoff).m;
  return FockOperator::make({cutoff}, (a + a.adjoint()) / std::sqrt(2.0));
}

FockOperator momentum_op(int cutoff) {
  Mat a = lower_op(cutoff).m;
  return FockOperator::make({cutoff}, (a - a.adjoint()) / (cdouble(0, 1) * std::sqrt(2.0)));
}

FockOperator rotation_op(double phi, int cutoff) {
  Mat m = Mat::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = std::polar(1.0, phi * n);
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator cooling_op(double beta, int cutoff) {
  require(beta >= 0.0, "cooling strength must be >= 0");
  Mat m = Mat::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = std::exp(-beta * n);
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator phasor_op(long ell, int cutoff) {
  require(std::labs(ell) < cutoff, "phasor shift must satisfy |ell| < cutoff");
  Mat m = Mat::Zero(cutoff, cutoff);
  if (ell >= 0) {
    for (int n = 0; n + ell < cutoff; ++n) m(n + ell, n) = 1.0;
  } else {
    for (int n = 0; n - ell < cutoff; ++n) m(n, n - ell) = 1.0;
  }
  return FockOperator::make({cutoff}, std::move(m));
}

FockOperator displacement_op(double qx, double qp, int cutoff) {
  cdouble alpha = cdouble(qx, qp) / std::sqrt(2.0);
  Mat a = lower_op(cutoff).m;
  Mat gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return FockOperator::make({cutoff}, gen.exp());
}

FockOperator standard_operator(const std::string& kind, double param, int cutoff) {
  if (kind == "lower") return lower_op(cutoff);
  if (kind == "raise") return raise_op(cutoff);
  if (kind == "number") return number_op(cutoff);
  if (kind == "position") return position_op(cutoff);
  if (kind == "momentum") return momentum_op(cutoff);
  if (kind == "rotation") return rotation_op(param, cutoff);
  if (kind == "cooling") return cooling_op(param, cutoff);
  if (kind == "phasor") {
    double r = std::round(param);
    require(r == param, "phasor shift must be an integer");
    return phasor_op(static_cast<long>(r), cutoff);
  }
  throw ValidationError("unknown operator kind: " + kind);
}

FockOperator embed(const FockOperator& op, const std::vector<int>& cutoffs, int mode) {
  require(mode >= 0 && mode < static_cast<int>(cutoffs.size()), "mode out of range");
  require(op.cutoffs.size() == 1 && op.dim() == cutoffs[mode],
          "embed expects a single-mode operator matching the target cutoff");
  FockOperator out = (mode == 0) ? op : identity_op(cutoffs[0]);
  for (size_t m = 1; m < cutoffs.size(); ++m) {
    FockOperator next = (static_cast<int>(m) == mode) ? op : identity_op(cutoffs[m]);
    out = tensor(out, next);
  }
  return out;
}

// ---- composition ----------------------------------------------------------

FockVector tensor(const FockVector& a, const FockVector& b) {
  std::vector<int> cut = a.cutoffs;
  cut.insert(cut.end(), b.cutoffs.begin(), b.cutoffs.end());
  Vec out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    out.segment(i * b.dim(), b.dim()) = a.amps[i] * b.amps;
  return FockVector::make(std::move(cut), std::move(out));
}

FockOperator tensor(const FockOperator& a, const FockOperator& b) {
  std::vector<int> cut = a.cutoffs;
  cut.insert(cut.end(), b.cutoffs.begin(), b.cutoffs.end());
  int da = a.dim(), db = b.dim();
  Mat out(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
  return FockOperator::make(std::move(cut), std::move(out));
}

FockVector apply(const FockOperator& op, const FockVector& v) {
  require(op.cutoffs == v.cutoffs, "operator and state cutoffs must match");
  return FockVector::make(v.cutoffs, op.m * v.amps);
}

cdouble expectation(const FockVector& v, const FockOperator& op) {
  require(op.cutoffs == v.cutoffs, "operator and state cutoffs must match");
  return v.amps.dot(op.m * v.amps);
}

cdouble overlap(const FockVector& a, const FockVector& b) {
  require(a.cutoffs == b.cutoffs, "state cutoffs must match");
  return a.amps.dot(b.amps);
}

double moment(const FockVector& v, int ell) {
  require(ell >= 0, "moment order must be >= 0");
  double acc = 0.0;
  for (int i = 0; i < v.dim(); ++i) {
    std::vector<int> ns = decode_index(i, v.cutoffs);
    double ntot = std::accumulate(ns.begin(), ns.end(), 0.0);
    acc += std::pow(ntot, ell) * std::norm(v.amps[i]);
  }
  require(std::isfinite(acc), "moment overflow: order too large for this support");
  return acc;
}

std::vector<double> hermite_functions(int nmax, double x) {
  require(nmax >= 1, "need at least one Hermite function");
  std::vector<double> psi(nmax);
  psi[0] = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  if (nmax > 1) psi[1] = x * std::sqrt(2.0) * psi[0];
  for (int n = 1; n + 1 < nmax; ++n)
    psi[n + 1] = x * std::sqrt(2.0 / (n + 1)) * psi[n] -
                 std::sqrt(n / (n + 1.0)) * psi[n - 1];
  return psi;
}

std::vector<cdouble> position_wavefunction(const FockVector& v, std::span<const double> xs) {
  require(v.n_modes() == 1, "position wavefunction is single-mode");
  std::vector<cdouble> out;
  out.reserve(xs.size());
  for (double x : xs) {
    std::vector<double> psi = hermite_functions(v.dim(), x);
    cdouble f = 0.0;
    for (int n = 0; n < v.dim(); ++n) f += v.amps[n] * psi[n];
    out.push_back(f);
  }
  return out;
}

std::vector<double> phase_distribution(const FockVector& v, int bins) {
  require(v.n_modes() == 1, "phase distribution is single-mode");
  require(bins >= 2, "need at least two bins");
  std::vector<double> p(bins);
  double total = 0.0;
  for (int j = 0; j < bins; ++j) {
    double phi = 2.0 * kPi * j / bins;
    cdouble s = 0.0;
    for (int n = 0; n < v.dim(); ++n) s += std::polar(1.0, -phi * n) * v.amps[n];
    p[j] = std::norm(s);
    total += p[j];
  }
  require(total > 0.0, "empty state");
  for (double& x : p) x /= total;
  return p;
}

}  // namespace bcodex
