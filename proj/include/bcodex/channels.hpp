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

#ifndef BCODEX_CHANNELS_HPP
#define BCODEX_CHANNELS_HPP

#include <string>
#include <vector>

#include "bcodex/fock.hpp"

namespace bcodex {

/// A Kraus channel on a truncated Fock space, with an explicit completeness
/// certificate: sum K†K = I is checked on the low-level block
/// n < certified_levels at construction and the channel refuses to build if
/// the defect exceeds the family's bound. Nothing is ever renormalized.
struct KrausChannel {
  std::string kind;
  double strength = 0.0;  // chi, or sigma for displacement noise
  std::vector<int> cutoffs;
  std::vector<Mat> kraus;
  int certified_levels = 0;
  double completeness_defect = 0.0;

  int dim() const { return static_cast<int>(kraus.at(0).rows()); }
};

/// Photon loss with transmissivity e^{-chi}:
/// K_l = sqrt((1-e^{-chi})^l / l!) e^{-chi n/2} a^l, l = 0..ell_max.
/// Per-level completeness is the binomial theorem; certified for
/// n < cutoff - ell_max at 1e-8. ell_max < 0 picks the smallest count whose
/// binomial tail at n = cutoff/2 is below 1e-12.
KrausChannel loss_channel(double chi, int cutoff, int ell_max = -1);

/// Diagonal dephasing: K_l = sqrt(chi^l / l!) e^{-chi n^2/2} n^l.
/// Per-level completeness is the Poisson sum; certified for n < cutoff/2 at
/// 1e-8 (the count needed grows like chi n^2, so the guard is half the space
/// rather than cutoff - ell_max). ell_max < 0 uses the Poisson tail policy.
KrausChannel dephasing_channel(double chi, int cutoff, int ell_max = -1);

/// Isotropic Gaussian displacement noise of per-quadrature variance sigma^2,
/// discretized by an n x n Gauss-Hermite product rule (n = nodes >= 7).
/// Each element is a weighted unitary, so completeness holds globally;
/// certified at 1e-6.
KrausChannel displacement_noise_channel(double sigma, int cutoff, int nodes = 7);

/// Quantum-limited amplification with gain e^{chi}: elements proportional to
/// e^{-chi n/2} (a†)^l with the gain normalization fixed by completeness
/// (negative-binomial sum per level); certified for n < cutoff - ell_max
/// at 1e-6.
KrausChannel amplification_channel(double chi, int cutoff, int ell_max = -1);

/// rho -> sum K rho K†. The output trace is allowed to drift from 1 only by
/// the amount the completeness certificate predicts for this input.
DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho);

/// Composition second ∘ first (first acts first). Products with weight
/// Tr(K†K)/dim below 1e-14 are dropped.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

}  // namespace bcodex

#endif  // BCODEX_CHANNELS_HPP
