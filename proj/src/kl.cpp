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

#include "bcodex/kl.hpp"

#include <cmath>
#include <numbers>

#include "bcodex/fock.hpp"

namespace bcodex {

KLReport kl_matrix(const BosonicCode& code, const std::vector<FockOperator>& errors,
                   const std::vector<std::string>& labels, double tolerance) {
  require(!errors.empty(), "kl_matrix: empty error list");
  require(labels.size() == errors.size(), "kl_matrix: labels/errors size mismatch");
  const Mat v = code.word_matrix();
  const int d = code.logical_dim();
  const int m = static_cast<int>(errors.size());
  const Mat p = v * v.adjoint();

  std::vector<Mat> ev(errors.size());
  for (int i = 0; i < m; ++i) {
    require(errors[i].cutoffs == code.cutoffs, "kl_matrix: error cutoffs mismatch");
    ev[i] = errors[i].m * v;
  }

  KLReport rep;
  rep.labels = labels;
  rep.tolerance = tolerance;
  rep.lambda = Mat::Zero(m, m);
  rep.pair_defect = RealMat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Mat block = ev[i].adjoint() * ev[j];  // V† Ei† Ej V, logical_dim x logical_dim
      cdouble lam = block.trace() / static_cast<double>(d);
      rep.lambda(i, j) = lam;
      Mat resid = v * (block - lam * Mat::Identity(d, d)) * v.adjoint();
      rep.pair_defect(i, j) = resid.cwiseAbs().maxCoeff();
      rep.defect = std::max(rep.defect, rep.pair_defect(i, j));
    }
  }
  rep.correctable = rep.defect < tolerance;
  return rep;
}

DetectabilityRow detectability(const BosonicCode& code, const FockOperator& error,
                               const std::string& label, double tolerance) {
  require(error.cutoffs == code.cutoffs, "detectability: error cutoffs mismatch");
  const Mat v = code.word_matrix();
  const int d = code.logical_dim();
  Mat block = v.adjoint() * error.m * v;
  DetectabilityRow row;
  row.label = label;
  row.scalar = block.trace() / static_cast<double>(d);
  Mat resid = v * (block - row.scalar * Mat::Identity(d, d)) * v.adjoint();
  row.deviation = resid.cwiseAbs().maxCoeff();
  row.detectable = row.deviation < tolerance;
  return row;
}

std::vector<DetectabilityRow> detectability_report(const BosonicCode& code,
                                                   const std::string& family,
                                                   int max_order, double tolerance) {
  require(max_order >= 1, "detectability_report: max_order must be >= 1");
  const int n_modes = static_cast<int>(code.cutoffs.size());
  std::vector<DetectabilityRow> rows;
  for (int mode = 0; mode < n_modes; ++mode) {
    const int cutoff = code.cutoffs[mode];
    for (int k = 1; k <= max_order; ++k) {
      FockOperator op;
      std::string label;
      if (family == "loss_powers") {
        op = identity_op({cutoff});
        for (int r = 0; r < k; ++r) op.m = lower_op(cutoff).m * op.m;
        label = "a^" + std::to_string(k);
      } else if (family == "gain_powers") {
        op = identity_op({cutoff});
        for (int r = 0; r < k; ++r) op.m = raise_op(cutoff).m * op.m;
        label = "adag^" + std::to_string(k);
      } else if (family == "dephasing_powers") {
        op = identity_op({cutoff});
        for (int r = 0; r < k; ++r) op.m = number_op(cutoff).m * op.m;
        label = "n^" + std::to_string(k);
      } else if (family == "phasor_shifts") {
        op = phasor_op(k, cutoff);
        label = "shift^" + std::to_string(k);
      } else if (family == "rotations") {
        double phi = 2.0 * std::numbers::pi * k / (max_order + 1);
        op = rotation_op(phi, cutoff);
        label = "rot(" + std::to_string(phi) + ")";
      } else {
        throw ValidationError("detectability_report: unknown family " + family);
      }
      if (n_modes > 1) label += "@mode" + std::to_string(mode);
      rows.push_back(detectability(code, embed(op, code.cutoffs, mode), label, tolerance));
      if (family == "phasor_shifts") {
        FockOperator down = phasor_op(-k, cutoff);
        std::string dl = "shift^-" + std::to_string(k);
        if (n_modes > 1) dl += "@mode" + std::to_string(mode);
        rows.push_back(detectability(code, embed(down, code.cutoffs, mode), dl, tolerance));
      }
    }
  }
  return rows;
}

double cat_zterm(int N, double alpha, int cutoff, int ell) {
  require(ell >= 1, "cat_zterm: ell must be >= 1");
  BosonicCode code = cat_code(N, alpha, cutoff);
  // Modular classes: plus = class 0, minus = class N (both mod 2N).
  Vec plus = code.codewords[0].amps + code.codewords[1].amps;
  Vec minus = code.codewords[0].amps - code.codewords[1].amps;
  auto moment_of = [&](const Vec& raw) {
    double nrm2 = raw.squaredNorm();
    double acc = 0.0;
    for (int n = 0; n < cutoff; ++n)
      acc += std::pow(static_cast<double>(n), ell) * std::norm(raw(n));
    return acc / nrm2;
  };
  return 0.5 * (moment_of(plus) - moment_of(minus));
}

std::optional<double> cat_sweet_spot(int N, int ell, double alpha_lo, double alpha_hi,
                                     int cutoff) {
  require(alpha_lo > 0 && alpha_hi > alpha_lo, "cat_sweet_spot: bad bracket");
  auto f = [&](double a) { return cat_zterm(N, a, cutoff, ell); };
  const int scan = 64;
  double prev_a = alpha_lo;
  double prev_v = f(prev_a);
  for (int i = 1; i <= scan; ++i) {
    double a = alpha_lo + (alpha_hi - alpha_lo) * i / scan;
    double v = f(a);
    if (prev_v == 0.0) return prev_a;
    if (std::signbit(v) != std::signbit(prev_v)) {
      double lo = prev_a, hi = a, flo = prev_v;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) < 1e-10 || hi - lo < 1e-12) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_a = a;
    prev_v = v;
  }
  return std::nullopt;
}

}  // namespace bcodex
