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

#include "bcodex/recovery.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "bcodex/fock.hpp"

namespace bcodex {

std::vector<FockOperator> modular_number_projectors(int N, const std::vector<int>& cutoffs) {
  require(N >= 1, "modular_number_projectors: N must be >= 1");
  const int dim = total_dim(cutoffs);
  std::vector<Mat> mats(N, Mat::Zero(dim, dim));
  for (int idx = 0; idx < dim; ++idx) {
    std::vector<int> ns = decode_index(idx, cutoffs);
    long total = 0;
    for (int n : ns) total += n;
    mats[total % N](idx, idx) = 1.0;
  }
  std::vector<FockOperator> out;
  out.reserve(N);
  for (int r = 0; r < N; ++r) out.push_back(FockOperator::make(cutoffs, mats[r]));
  return out;
}

RecoveryMap build_projective_recovery(const BosonicCode& code,
                                      const std::vector<FockOperator>& errors,
                                      double kl_tol) {
  std::vector<std::string> labels(errors.size(), "e");
  KLReport rep = kl_matrix(code, errors, labels, kl_tol);
  if (rep.defect >= kl_tol) {
    throw ToleranceError("build_projective_recovery: error set is not correctable (defect " +
                         std::to_string(rep.defect) + " >= " + std::to_string(kl_tol) + ")");
  }

  const Mat v = code.word_matrix();
  const int dim = code.dim();
  const int m = static_cast<int>(errors.size());

  Eigen::SelfAdjointEigenSolver<Mat> es(rep.lambda);
  certify(es.info() == Eigen::Success, "build_projective_recovery: eigensolver failed");

  RecoveryMap rec;
  rec.cutoffs = code.cutoffs;
  rec.kl_defect = rep.defect;

  Mat assigned_sum = Mat::Zero(dim, dim);  // sum of error-space projectors
  // Largest eigenvalue first: syndromes ordered by decreasing weight.
  for (int k = m - 1; k >= 0; --k) {
    double evk = es.eigenvalues()(k);
    if (evk <= 1e-12) continue;
    Mat ek = Mat::Zero(dim, dim);
    for (int i = 0; i < m; ++i) ek += es.eigenvectors()(i, k) * errors[i].m;
    ek /= std::sqrt(evk);
    Mat w = ek * v;  // near-isometry onto the k-th error space
    Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    certify(svd.singularValues().minCoeff() > 0.5,
            "build_projective_recovery: degenerate error space");
    Mat iso = svd.matrixU() * svd.matrixV().adjoint();  // polar isometry of w
    rec.kraus.push_back(v * iso.adjoint());
    assigned_sum += iso * iso.adjoint();
    ++rec.n_assigned;
  }

  // Everything outside the assigned spaces decodes to the maximally mixed
  // logical state (one element per codeword keeps the map trace preserving
  // and makes the fidelity contribution independent of the word basis).
  Mat leftover = Mat::Identity(dim, dim) - assigned_sum;
  Eigen::SelfAdjointEigenSolver<Mat> lf(leftover);
  certify(lf.info() == Eigen::Success, "build_projective_recovery: eigensolver failed");
  const double d_log = static_cast<double>(v.cols());
  for (int j = dim - 1; j >= 0; --j) {
    double w = lf.eigenvalues()(j);
    if (w <= 1e-14) break;  // ascending order: done once weights vanish
    for (int k = 0; k < v.cols(); ++k)
      rec.kraus.push_back(std::sqrt(w / d_log) *
                          (v.col(k) * lf.eigenvectors().col(j).adjoint()));
    if (w > 0.5) ++rec.failure_rank;
  }
  return rec;
}

std::vector<Mat> logical_kraus(const BosonicCode& code, const KrausChannel& channel,
                               const RecoveryMap& recovery) {
  require(channel.cutoffs == code.cutoffs, "logical_kraus: channel cutoffs mismatch");
  require(recovery.cutoffs == code.cutoffs, "logical_kraus: recovery cutoffs mismatch");
  const Mat v = code.word_matrix();
  std::vector<Mat> post;  // V† R_j, logical_dim x dim
  post.reserve(recovery.kraus.size());
  for (const Mat& r : recovery.kraus) post.push_back(v.adjoint() * r);
  std::vector<Mat> pre;  // K_i V, dim x logical_dim
  pre.reserve(channel.kraus.size());
  for (const Mat& k : channel.kraus) pre.push_back(k * v);

  std::vector<Mat> out;
  out.reserve(post.size() * pre.size());
  for (const Mat& a : post)
    for (const Mat& b : pre) out.push_back(a * b);
  return out;
}

Mat choi_matrix(const std::vector<Mat>& kraus, int dim) {
  require(dim >= 1, "choi_matrix: bad dimension");
  Mat choi = Mat::Zero(dim * dim, dim * dim);
  const double inv_d = 1.0 / dim;
  for (const Mat& m : kraus) {
    require(m.rows() == dim && m.cols() == dim, "choi_matrix: Kraus dimension mismatch");
    // |phi_m> = (I ⊗ m) |Phi>, component (i*dim + a) = m(a, i)/sqrt(dim)
    Vec phi(dim * dim);
    for (int i = 0; i < dim; ++i)
      for (int a = 0; a < dim; ++a) phi(i * dim + a) = m(a, i);
    choi += inv_d * (phi * phi.adjoint());
  }
  return choi;
}

double process_fidelity(const BosonicCode& code, const KrausChannel& channel,
                        const RecoveryMap& recovery) {
  const int d = code.logical_dim();
  Mat choi = choi_matrix(logical_kraus(code, channel, recovery), d);
  Vec phi = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return (phi.adjoint() * choi * phi).real()(0, 0);
}

double unassigned_probability(const BosonicCode& code, const KrausChannel& channel,
                              const RecoveryMap& recovery) {
  require(channel.cutoffs == code.cutoffs, "unassigned_probability: cutoffs mismatch");
  const Mat v = code.word_matrix();
  const int dim = code.dim();
  Mat rho = v * v.adjoint() / static_cast<double>(code.logical_dim());
  Mat out = Mat::Zero(dim, dim);
  for (const Mat& k : channel.kraus) out += k * rho * k.adjoint();
  Mat failure_povm = Mat::Zero(dim, dim);
  for (size_t j = recovery.kraus.size(); j-- > static_cast<size_t>(recovery.n_assigned);)
    failure_povm += recovery.kraus[j].adjoint() * recovery.kraus[j];
  return (failure_povm * out).trace().real();
}

std::vector<SweepRow> noise_sweep(const BosonicCode& code, const std::string& channel_kind,
                                  const std::vector<double>& chi_grid,
                                  const std::vector<FockOperator>& recovery_errors) {
  require(code.cutoffs.size() == 1, "noise_sweep: single-mode codes only");
  require(!chi_grid.empty(), "noise_sweep: empty grid");
  const int cutoff = code.cutoffs[0];

  RecoveryMap rec = build_projective_recovery(code, recovery_errors);
  BosonicCode bare = trivial_code(cutoff);
  RecoveryMap bare_rec = build_projective_recovery(bare, {identity_op({cutoff})});

  std::vector<SweepRow> rows;
  rows.reserve(chi_grid.size());
  for (double chi : chi_grid) {
    KrausChannel ch;
    if (channel_kind == "loss") {
      ch = loss_channel(chi, cutoff);
    } else if (channel_kind == "dephasing") {
      ch = dephasing_channel(chi, cutoff);
    } else {
      throw ValidationError("noise_sweep: unknown channel kind " + channel_kind);
    }
    SweepRow row;
    row.chi = chi;
    row.p_logical = 1.0 - process_fidelity(code, ch, rec);
    row.p_physical = 1.0 - process_fidelity(bare, ch, bare_rec);
    row.p_unassigned = unassigned_probability(code, ch, rec);
    row.gain = (chi == 0.0 || row.p_logical <= 0.0)
                   ? std::numeric_limits<double>::quiet_NaN()
                   : row.p_physical / row.p_logical;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bcodex
