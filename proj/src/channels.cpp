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

#include "bcodex/channels.hpp"

#include <cmath>

namespace bcodex {

namespace {

constexpr double kPi = 3.141592653589793238462643;

double block_defect(const std::vector<Mat>& kraus, int levels) {
  int d = static_cast<int>(kraus.at(0).rows());
  Mat m = Mat::Zero(d, d);
  for (const Mat& k : kraus) m += k.adjoint() * k;
  m -= Mat::Identity(d, d);
  return m.topLeftCorner(levels, levels).cwiseAbs().maxCoeff();
}

void seal(KrausChannel& ch, int certified_levels, double bound) {
  require(certified_levels >= 1, "channel certification block is empty; raise the cutoff");
  ch.certified_levels = certified_levels;
  ch.completeness_defect = block_defect(ch.kraus, certified_levels);
  certify(ch.completeness_defect < bound,
          ch.kind + " channel completeness defect " +
              std::to_string(ch.completeness_defect) + " exceeds bound");
}

// Smallest count L with sum_{l<=L} terms(l) within 1e-12 of 1; terms must be
// a nonnegative series summing to 1.
template <typename F>
int tail_policy_count(F term, int hard_cap) {
  double acc = 0.0;
  for (int l = 0; l <= hard_cap; ++l) {
    acc += term(l);
    if (1.0 - acc < 1e-12) return l;
  }
  return hard_cap;
}

}  // namespace

KrausChannel loss_channel(double chi, int cutoff, int ell_max) {
  require(chi >= 0.0, "loss strength must be >= 0");
  require(cutoff >= 2, "cutoff must be >= 2");
  double p = 1.0 - std::exp(-chi);
  if (ell_max < 0) {
    // Binomial(n*, p) upper tail below 1e-12 at the half-cutoff support line.
    int nstar = (cutoff + 1) / 2;
    double q = 1.0 - p, c = std::pow(q, nstar), acc = 0.0;
    ell_max = nstar;
    for (int l = 0; l <= nstar; ++l) {
      acc += c;
      if (1.0 - acc < 1e-12) {
        ell_max = l;
        break;
      }
      c *= p / q * (nstar - l) / (l + 1);
    }
  }
  require(ell_max < cutoff, "loss ell_max must be < cutoff");

  KrausChannel ch;
  ch.kind = "loss";
  ch.strength = chi;
  ch.cutoffs = {cutoff};
  Mat damp = cooling_op(chi / 2.0, cutoff).m;
  Mat apow = Mat::Identity(cutoff, cutoff);
  Mat a = lower_op(cutoff).m;
  double logfac = 0.0;
  for (int l = 0; l <= ell_max; ++l) {
    if (l > 0) logfac += std::log(static_cast<double>(l));
    // sqrt(p^l / l!) in log space to dodge overflow at large l
    double coef = (l == 0) ? 1.0 : std::exp(0.5 * (l * std::log(p) - logfac));
    ch.kraus.push_back(coef * (damp * apow));
    apow = a * apow;
  }
  seal(ch, cutoff - ell_max, 1e-8);
  return ch;
}

KrausChannel dephasing_channel(double chi, int cutoff, int ell_max) {
  require(chi >= 0.0, "dephasing strength must be >= 0");
  require(cutoff >= 2, "cutoff must be >= 2");
  int certified = (cutoff + 1) / 2;
  if (ell_max < 0) {
    double lambda = chi * double(certified - 1) * double(certified - 1);
    double c = std::exp(-lambda);
    ell_max = tail_policy_count(
        [&](int l) {
          double t = c;
          c *= lambda / (l + 1);
          return t;
        },
        200000);
  }

  KrausChannel ch;
  ch.kind = "dephasing";
  ch.strength = chi;
  ch.cutoffs = {cutoff};
  for (int l = 0; l <= ell_max; ++l) {
    Mat k = Mat::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) {
      double logv = -chi * double(n) * double(n) / 2.0;
      if (l > 0) {
        if (n == 0) {
          k(n, n) = 0.0;
          continue;
        }
        logv += 0.5 * (l * std::log(chi) - std::lgamma(l + 1.0)) + l * std::log(double(n));
      }
      k(n, n) = std::exp(logv);
    }
    ch.kraus.push_back(std::move(k));
  }
  seal(ch, certified, 1e-8);
  return ch;
}

KrausChannel displacement_noise_channel(double sigma, int cutoff, int nodes) {
  require(sigma > 0.0, "displacement noise needs sigma > 0");
  require(nodes >= 7, "Gauss-Hermite rule needs at least 7 nodes per axis");
  require(cutoff >= 2, "cutoff must be >= 2");

  // Gauss-Hermite nodes/weights for weight e^{-t^2} via the Golub-Welsch
  // symmetric tridiagonal eigenproblem.
  RealMat T = RealMat::Zero(nodes, nodes);
  for (int i = 1; i < nodes; ++i) T(i, i - 1) = T(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<RealMat> es(T);
  RealVec t = es.eigenvalues();
  RealVec w(nodes);
  for (int i = 0; i < nodes; ++i) {
    double v0 = es.eigenvectors()(0, i);
    w[i] = v0 * v0;  // weights normalized so they sum to 1
  }

  KrausChannel ch;
  ch.kind = "displacement_noise";
  ch.strength = sigma;
  ch.cutoffs = {cutoff};
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j) {
      double qx = std::sqrt(2.0) * sigma * t[i];
      double qp = std::sqrt(2.0) * sigma * t[j];
      ch.kraus.push_back(std::sqrt(w[i] * w[j]) * displacement_op(qx, qp, cutoff).m);
    }
  seal(ch, cutoff, 1e-6);
  return ch;
}

KrausChannel amplification_channel(double chi, int cutoff, int ell_max) {
  require(chi >= 0.0, "amplification strength must be >= 0");
  require(cutoff >= 2, "cutoff must be >= 2");
  double g = std::exp(chi) - 1.0;  // gain minus one
  if (ell_max < 0) {
    // Per-level completeness at n* = cutoff/2 is a negative-binomial series;
    // stop once its partial sum is within 1e-12 of 1.
    int nstar = (cutoff + 1) / 2;
    double c = std::exp(-chi * (nstar + 1.0));  // l = 0 term
    ell_max = tail_policy_count(
        [&](int l) {
          double t = c;
          c *= (1.0 - std::exp(-chi)) * double(nstar + l + 1) / double(l + 1);
          return t;
        },
        200000);
    ell_max = std::min(ell_max, cutoff - 1);
  }
  require(ell_max < cutoff, "amplification ell_max must be < cutoff");

  KrausChannel ch;
  ch.kind = "amplification";
  ch.strength = chi;
  ch.cutoffs = {cutoff};
  Mat damp = cooling_op(chi / 2.0, cutoff).m;
  Mat adag = raise_op(cutoff).m;
  Mat apow = Mat::Identity(cutoff, cutoff);
  double logfac = 0.0;
  for (int l = 0; l <= ell_max; ++l) {
    if (l > 0) logfac += std::log(static_cast<double>(l));
    double coef = (l == 0) ? std::exp(-chi / 2.0)
                           : std::exp(0.5 * (l * std::log(g) - logfac) - chi / 2.0);
    ch.kraus.push_back(coef * (damp * apow));
    apow = adag * apow;
  }
  seal(ch, cutoff - ell_max, 1e-6);
  return ch;
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  require(ch.cutoffs == rho.cutoffs, "channel and state cutoffs must match");
  int d = rho.dim();
  Mat out = Mat::Zero(d, d);
  Mat m = Mat::Zero(d, d);
  for (const Mat& k : ch.kraus) {
    out += k * rho.m * k.adjoint();
    m += k.adjoint() * k;
  }
  // Trace may deviate from 1 only as predicted by the completeness defect on
  // this input; pass that bound through instead of renormalizing.
  double expected = (m * rho.m).trace().real();
  double tol = std::abs(expected - 1.0) + 1e-9;
  return DensityOperator::make(rho.cutoffs, std::move(out), tol);
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  require(second.cutoffs == first.cutoffs, "composed channels need matching cutoffs");
  KrausChannel ch;
  ch.kind = second.kind + "*" + first.kind;
  ch.strength = 0.0;
  ch.cutoffs = first.cutoffs;
  int d = first.dim();
  for (const Mat& kb : second.kraus)
    for (const Mat& ka : first.kraus) {
      Mat prod = kb * ka;
      if (prod.squaredNorm() / d >= 1e-14) ch.kraus.push_back(std::move(prod));
    }
  int guard_a = d - first.certified_levels;
  int guard_b = d - second.certified_levels;
  int certified = std::max(1, d - guard_a - guard_b);
  ch.certified_levels = certified;
  ch.completeness_defect = block_defect(ch.kraus, certified);
  certify(ch.completeness_defect < 1e-6, "composed channel completeness defect too large");
  return ch;
}

}  // namespace bcodex
