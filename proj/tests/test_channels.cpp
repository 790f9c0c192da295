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

#include "bcodex/channels.hpp"
#include "oracles.hpp"

using namespace bcodex;
using oracle::kPi;

namespace {

// Completeness defect recomputed from scratch on the certified block.
double block_defect(const KrausChannel& ch) {
  int d = ch.dim();
  Mat s = Mat::Zero(d, d);
  for (const Mat& k : ch.kraus) s += k.adjoint() * k;
  s -= Mat::Identity(d, d);
  return s.topLeftCorner(ch.certified_levels, ch.certified_levels).cwiseAbs().maxCoeff();
}

double mean_n(const DensityOperator& rho) {
  return (number_op(rho.dim()).m * rho.m).trace().real();
}

cdouble mean_of(const FockOperator& op, const DensityOperator& rho) {
  return (op.m * rho.m).trace();
}

}  // namespace

TEST_CASE("loss channel: certified completeness at weak through strong coupling") {
  for (double chi : {0.01, 0.1, 1.0}) {
    CAPTURE(chi);
    KrausChannel ch = loss_channel(chi, 40);
    CHECK(ch.completeness_defect < 1e-8);
    CHECK(ch.certified_levels >= 20);
    CHECK(block_defect(ch) < 1e-8);
    CHECK(block_defect(ch) == ch.completeness_defect);
    // sum K†K is exactly diagonal for a diagonal-in-number family
    int d = ch.dim();
    Mat s = Mat::Zero(d, d);
    for (const Mat& k : ch.kraus) s += k.adjoint() * k;
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n)
        if (m != n) CHECK(s(m, n) == cdouble(0.0, 0.0));
  }
  CHECK(loss_channel(0.01, 40).certified_levels >= 30);
  CHECK_THROWS_AS(loss_channel(-0.1, 40), ValidationError);
}

TEST_CASE("loss channel: coherent attenuation, vacuum fixed point, energy decay") {
  const int c = 40;
  const double chi = 0.2;
  KrausChannel ch = loss_channel(chi, c);

  DensityOperator rho = apply_channel(ch, DensityOperator::pure(coherent_state(1.0, c)));
  FockVector target = coherent_state(std::exp(-chi / 2.0), c);
  cdouble fid = (target.amps.adjoint() * rho.m * target.amps)(0);
  CHECK(fid.real() > 1.0 - 1e-8);
  CHECK(std::abs(rho.trace_real() - 1.0) < 1e-10);
  CHECK(std::abs(mean_n(rho) - std::exp(-chi) * 1.0) < 1e-8);
  // <x> shrinks by e^{-chi/2}
  CHECK(std::abs(mean_of(position_op(c), rho).real() - std::sqrt(2.0) * std::exp(-chi / 2.0)) <
        1e-8);

  DensityOperator vac = apply_channel(ch, DensityOperator::pure(fock_basis_state(0, c)));
  CHECK((vac.m - DensityOperator::pure(fock_basis_state(0, c)).m).cwiseAbs().maxCoeff() <
        1e-12);

  // chi = 0 is the exact identity channel
  KrausChannel id = loss_channel(0.0, c);
  CHECK(id.kraus.size() == 1);
  CHECK(id.kraus[0] == Mat::Identity(c, c));
}

TEST_CASE("strong loss empties a two-photon state at the binomial rate") {
  const int c = 20;
  const double chi = 6.0;
  DensityOperator rho = apply_channel(loss_channel(chi, c),
                                      DensityOperator::pure(fock_basis_state(2, c)));
  double p0 = rho.m(0, 0).real();
  double q = std::exp(-chi);  // per-photon survival
  CHECK(std::abs(p0 - (1.0 - q) * (1.0 - q)) < 1e-9);
  CHECK(p0 > 0.99);
}

TEST_CASE("dephasing channel: exact Gaussian off-diagonal decay, diagonal fixed points") {
  const int c = 30;
  const double chi = 0.3;
  KrausChannel ch = dephasing_channel(chi, c);
  CHECK(ch.completeness_defect < 1e-8);
  CHECK(ch.certified_levels >= 15);

  DensityOperator in = DensityOperator::pure(coherent_state(1.5, c));
  DensityOperator out = apply_channel(ch, in);
  for (int m = 0; m < ch.certified_levels; ++m)
    for (int n = 0; n < ch.certified_levels; ++n) {
      cdouble expect = in.m(m, n) * std::exp(-chi * (m - n) * (m - n) / 2.0);
      CHECK(std::abs(out.m(m, n) - expect) < 1e-8);
    }
  // number moments are untouched
  for (int ell = 1; ell <= 3; ++ell) {
    Mat nl = number_op(c).m;
    for (int k = 1; k < ell; ++k) nl = nl * number_op(c).m;
    CHECK(std::abs((nl * out.m).trace().real() - (nl * in.m).trace().real()) < 1e-7);
  }
  // Fock states are exact fixed points
  DensityOperator f3 = DensityOperator::pure(fock_basis_state(3, c));
  CHECK((apply_channel(ch, f3).m - f3.m).cwiseAbs().maxCoeff() < 1e-10);
  // <x> shrinks by the m -> m+1 coherence factor e^{-chi/2}
  CHECK(std::abs(mean_of(position_op(c), out).real() -
                 std::exp(-chi / 2.0) * mean_of(position_op(c), in).real()) < 1e-8);

  KrausChannel id = dephasing_channel(0.0, c);
  CHECK(id.kraus.size() == 1);
  CHECK(id.kraus[0] == Mat::Identity(c, c));
}

TEST_CASE("displacement noise: energy injection, moment bookkeeping, isotropy") {
  const int c = 30;
  const double sigma = 0.3;
  KrausChannel ch = displacement_noise_channel(sigma, c);
  CHECK(ch.completeness_defect < 1e-6);
  CHECK(ch.certified_levels == c);

  // vacuum gains exactly sigma^2 quanta (one half sigma^2 per quadrature)
  DensityOperator vac_out = apply_channel(ch, DensityOperator::pure(fock_basis_state(0, c)));
  CHECK(std::abs(mean_n(vac_out) - sigma * sigma) < 1e-4);

  // means survive; each quadrature variance grows by sigma^2
  DensityOperator in = DensityOperator::pure(coherent_state(cdouble(0.8, -0.4), c));
  DensityOperator out = apply_channel(ch, in);
  Mat x = position_op(c).m, p = momentum_op(c).m;
  CHECK(std::abs(mean_of(position_op(c), out) - mean_of(position_op(c), in)) < 1e-5);
  CHECK(std::abs(mean_of(momentum_op(c), out) - mean_of(momentum_op(c), in)) < 1e-5);
  auto var = [](const Mat& q, const DensityOperator& r) {
    double m1 = (q * r.m).trace().real();
    return (q * q * r.m).trace().real() - m1 * m1;
  };
  CHECK(std::abs(var(x, out) - (var(x, in) + sigma * sigma)) < 1e-4);
  CHECK(std::abs(var(p, out) - (var(p, in) + sigma * sigma)) < 1e-4);

  // isotropic: commutes with a quarter rotation
  Mat r = rotation_op(kPi / 2.0, c).m;
  DensityOperator rot_then = apply_channel(
      ch, DensityOperator::make({c}, r * in.m * r.adjoint()));
  Mat then_rot = r * out.m * r.adjoint();
  CHECK((rot_then.m - then_rot).cwiseAbs().maxCoeff() < 1e-6);

  CHECK_THROWS_AS(displacement_noise_channel(-0.1, c), ValidationError);
  CHECK_THROWS_AS(displacement_noise_channel(0.3, c, 3), ValidationError);  // nodes < 7
}

TEST_CASE("amplification: gain law and the loss-composition Gaussian limit") {
  const int c = 40;
  const double chi = 0.15;
  KrausChannel amp = amplification_channel(chi, c);
  CHECK(amp.completeness_defect < 1e-6);
  CHECK(block_defect(amp) < 1e-6);

  const double nbar = 0.8 * 0.8, gain = std::exp(chi);
  DensityOperator in = DensityOperator::pure(coherent_state(0.8, c));
  DensityOperator out = apply_channel(amp, in);
  CHECK(mean_n(out) > mean_n(in));
  CHECK(std::abs(mean_n(out) - (gain * nbar + (gain - 1.0))) < 1e-4);

  // amplify-then-damp at matched strength adds (1 - e^{-chi}) thermal quanta
  DensityOperator awgn = apply_channel(loss_channel(chi, c), out);
  double predicted = nbar + (1.0 - std::exp(-chi));
  CHECK(std::abs(mean_n(awgn) - predicted) / predicted < 0.05);
  CHECK_THROWS_AS(amplification_channel(-0.2, c), ValidationError);
}

TEST_CASE("composition is a semigroup on the certified block and prunes dead weight") {
  const int c = 30;
  KrausChannel l1 = loss_channel(0.1, c), l2 = loss_channel(0.2, c);
  KrausChannel both = compose(l2, l1);
  KrausChannel direct = loss_channel(0.3, c);
  DensityOperator in = DensityOperator::pure(coherent_state(1.2, c));
  Mat via_pair = apply_channel(both, in).m;
  Mat via_direct = apply_channel(direct, in).m;
  CHECK((via_pair - via_direct).cwiseAbs().maxCoeff() < 1e-7);
  CHECK(both.kraus.size() < l1.kraus.size() * l2.kraus.size());  // pruning engaged
  CHECK(both.completeness_defect < 1e-7);

  KrausChannel d1 = dephasing_channel(0.05, c), d2 = dephasing_channel(0.07, c);
  Mat dp = apply_channel(compose(d2, d1), in).m;
  Mat dd = apply_channel(dephasing_channel(0.12, c), in).m;
  CHECK((dp - dd).cwiseAbs().maxCoeff() < 1e-7);

  CHECK_THROWS_AS(compose(loss_channel(0.1, 20), loss_channel(0.1, 30)), ValidationError);
}

TEST_CASE("channel application rejects mismatched spaces and respects its trace bound") {
  KrausChannel ch = loss_channel(0.2, 30);
  CHECK_THROWS_AS(apply_channel(ch, DensityOperator::pure(fock_basis_state(0, 20))),
                  ValidationError);
  // an input far inside the certified block keeps unit trace to the certificate
  DensityOperator rho = apply_channel(ch, DensityOperator::pure(coherent_state(1.0, 30)));
  CHECK(std::abs(rho.trace_real() - 1.0) < 1e-8);
}
