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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "bcodex/recovery.hpp"
#include "oracles.hpp"

using namespace bcodex;

namespace {

Mat apply_map(const std::vector<Mat>& kraus, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& k : kraus) out += k * rho * k.adjoint();
  return out;
}

BosonicCode with_rotated_words(const BosonicCode& code, double theta, double phi) {
  Mat u(2, 2);
  u << std::cos(theta), -std::polar(1.0, phi) * std::sin(theta),
      std::polar(1.0, -phi) * std::sin(theta), std::cos(theta);
  Mat mixed = code.word_matrix() * u;
  BosonicCode out = code;
  out.family = "custom";
  for (int k = 0; k < 2; ++k) out.codewords[k].amps = mixed.col(k);
  return out;
}

}  // namespace

TEST_CASE("modular projectors partition the space exactly") {
  auto projs = modular_number_projectors(2, {12});
  REQUIRE(projs.size() == 2);
  Mat sum = projs[0].m + projs[1].m;
  CHECK(sum == Mat::Identity(12, 12));  // diagonal 0/1 entries, bitwise complete
  CHECK((projs[0].m * projs[1].m).cwiseAbs().maxCoeff() == 0.0);

  BosonicCode b = binomial_code(2, 1, 12);
  // codewords live on even levels: outcome 0 with certainty
  for (const FockVector& w : b.codewords) {
    double p0 = (w.amps.adjoint() * projs[0].m * w.amps)(0).real();
    CHECK(std::abs(p0 - 1.0) < 1e-15);
  }
  // one photon lost: outcome flips to 1
  FockVector damaged = apply(lower_op(12), b.codewords[0]).normalized();
  double p1 = (damaged.amps.adjoint() * projs[1].m * damaged.amps)(0).real();
  CHECK(std::abs(p1 - 1.0) < 1e-14);

  // multimode: residue of the total occupation
  auto mm = modular_number_projectors(2, {3, 3});
  FockVector v11 = fock_basis_state({1, 1}, {3, 3});
  CHECK((v11.amps.adjoint() * mm[0].m * v11.amps)(0).real() == 1.0);
  CHECK_THROWS_AS(modular_number_projectors(0, {12}), ValidationError);
}

TEST_CASE("projective recovery: trace preserving, fixes the code, undoes one loss") {
  const int c = 12;
  BosonicCode b = binomial_code(2, 1, c);
  RecoveryMap rec = build_projective_recovery(b, {identity_op(c), lower_op(c)});
  CHECK(rec.n_assigned == 2);
  CHECK(rec.kl_defect < 1e-10);

  Mat total = Mat::Zero(c, c);
  for (const Mat& k : rec.kraus) total += k.adjoint() * k;
  CHECK((total - Mat::Identity(c, c)).cwiseAbs().maxCoeff() < 1e-10);

  // recovery restores any logical state hit by the identity or one loss
  FockVector psi = b.codewords[0];
  psi.amps = (b.codewords[0].amps + cdouble(0.0, 1.0) * b.codewords[1].amps) /
             std::sqrt(2.0);
  for (bool damage : {false, true}) {
    FockVector in = damage ? apply(lower_op(c), psi).normalized() : psi;
    Mat rho = apply_map(rec.kraus, in.amps * in.amps.adjoint());
    cdouble fid = (psi.amps.adjoint() * rho * psi.amps)(0);
    CHECK(fid.real() > 1.0 - 1e-9);
  }
}

TEST_CASE("recovery construction refuses uncorrectable error sets") {
  BosonicCode dr = dual_rail_code();
  FockOperator id = FockOperator::make(dr.cutoffs, Mat::Identity(9, 9));
  FockOperator a1 = embed(lower_op(3), dr.cutoffs, 0);
  FockOperator a2 = embed(lower_op(3), dr.cutoffs, 1);
  CHECK_THROWS_AS(build_projective_recovery(dr, {id, a1, a2}), ToleranceError);
  CHECK_THROWS_AS(build_projective_recovery(trivial_code(8),
                                            {identity_op(8), lower_op(8)}),
                  ToleranceError);
}

TEST_CASE("process fidelity: identity channel scores one, basis independent") {
  const int c = 12;
  BosonicCode b = binomial_code(2, 1, c);
  RecoveryMap rec = build_projective_recovery(b, {identity_op(c), lower_op(c)});
  KrausChannel id = loss_channel(0.0, c);
  CHECK(std::abs(process_fidelity(b, id, rec) - 1.0) < 1e-10);

  KrausChannel noisy = loss_channel(0.02, c);
  double f = process_fidelity(b, noisy, rec);
  CHECK(f < 1.0);
  CHECK(f > 0.99);

  // invariant under a logical basis rotation (recovery rebuilt per basis)
  BosonicCode rot = with_rotated_words(b, 0.41, -0.8);
  RecoveryMap rec2 = build_projective_recovery(rot, {identity_op(c), lower_op(c)});
  CHECK(std::abs(process_fidelity(rot, noisy, rec2) - f) < 1e-10);

  // cross-check the Choi construction against the trace formula
  std::vector<Mat> lk = logical_kraus(b, noisy, rec);
  double via_trace = 0.0;
  for (const Mat& m : lk) via_trace += std::norm(m.trace()) / 4.0;
  CHECK(std::abs(via_trace - f) < 1e-12);

  Mat choi = choi_matrix(lk, 2);
  CHECK(std::abs(choi.trace().real() - 1.0) < 1e-10);
  Eigen::SelfAdjointEigenSolver<Mat> es(choi);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("failure weight is tiny for a correctable set and zero for the identity map") {
  const int c = 16;
  BosonicCode b = binomial_code(2, 1, c);
  RecoveryMap rec = build_projective_recovery(b, {identity_op(c), lower_op(c)});
  KrausChannel noisy = loss_channel(0.05, c);
  double w = unassigned_probability(b, noisy, rec);
  CHECK(w >= 0.0);
  CHECK(w < 0.01);  // only multi-loss events escape the two syndromes
  KrausChannel id = loss_channel(0.0, c);
  CHECK(unassigned_probability(b, id, rec) < 1e-12);
}

TEST_CASE("loss sweep: quadratic logical scaling and the pinned coding gains") {
  const int c = 20;
  BosonicCode b = binomial_code(2, 1, c);
  std::vector<double> grid{0.0, 1e-3, 2e-3, 5e-3, 1e-2};
  auto rows = noise_sweep(b, "loss", grid, {identity_op(c), lower_op(c)});
  REQUIRE(rows.size() == grid.size());

  CHECK(std::isnan(rows[0].gain));  // chi = 0 has no meaningful ratio
  CHECK(rows[0].p_logical < 1e-12);

  std::vector<double> lx, ly;
  double prev = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].chi == grid[i]);
    CHECK(rows[i].p_logical > prev);          // monotone in noise
    CHECK(rows[i].p_logical < rows[i].p_physical);
    prev = rows[i].p_logical;
    lx.push_back(std::log(rows[i].chi));
    ly.push_back(std::log(rows[i].p_logical));
  }
  auto fit = oracle::fit_line(lx, ly);
  CHECK(fit.slope > 1.9);
  CHECK(fit.slope < 2.3);

  // frozen gain values on this exact configuration
  CHECK(std::abs(rows[1].gain - 222.0) / 222.0 < 0.10);
  CHECK(std::abs(rows[3].gain - 45.0) / 45.0 < 0.10);
  CHECK(std::abs(rows[4].gain - 22.0) / 22.0 < 0.10);

  // the bare reference matches its closed form 1 - (1 + e^{-chi/2})^2 / 4
  for (size_t i = 0; i < rows.size(); ++i) {
    double e = std::exp(-grid[i] / 2.0);
    CHECK(std::abs(rows[i].p_physical - (1.0 - (1.0 + e) * (1.0 + e) / 4.0)) < 1e-10);
  }
}

TEST_CASE("dephasing sweep: spacing-1 binomial beats the bare qubit") {
  const int c = 16;
  BosonicCode b = binomial_code(1, 2, c);
  std::vector<double> grid{1e-3, 3e-3, 1e-2};
  auto rows = noise_sweep(b, "dephasing", grid, {identity_op(c), number_op(c)});
  double prev = 0.0;
  for (const auto& r : rows) {
    CHECK(r.gain > 1.0);
    CHECK(r.p_logical > prev);
    prev = r.p_logical;
  }
}

TEST_CASE("sweep validation: single mode only, known channel kinds only") {
  BosonicCode dr = dual_rail_code();
  FockOperator id = FockOperator::make(dr.cutoffs, Mat::Identity(9, 9));
  CHECK_THROWS_AS(noise_sweep(dr, "loss", {1e-3}, {id}), ValidationError);
  BosonicCode b = binomial_code(2, 1, 12);
  CHECK_THROWS_AS(noise_sweep(b, "squeeze", {1e-3}, {identity_op(12)}), ValidationError);
  CHECK_THROWS_AS(choi_matrix({Mat::Identity(2, 2)}, 3), ValidationError);
}
