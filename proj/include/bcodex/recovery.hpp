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

#ifndef BCODEX_RECOVERY_HPP
#define BCODEX_RECOVERY_HPP

#include <string>
#include <vector>

#include "bcodex/channels.hpp"
#include "bcodex/codes.hpp"
#include "bcodex/kl.hpp"

namespace bcodex {

/// Projectors onto the residue classes of total photon number mod N.
/// They are diagonal 0/1 matrices, so completeness holds exactly.
std::vector<FockOperator> modular_number_projectors(int N, const std::vector<int>& cutoffs);

/// Syndrome-measure-and-correct map built from a correctable error set.
/// kraus[k] for k < n_assigned maps the k-th perturbed code space back onto
/// the code space; the remaining elements route everything else to the
/// maximally mixed logical state (decoding failure, tracked separately).
struct RecoveryMap {
  std::vector<int> cutoffs;
  std::vector<Mat> kraus;
  int n_assigned = 0;
  int failure_rank = 0;
  double kl_defect = 0.0;
};

/// Diagonalizes the KL matrix of `errors`, orthonormalizes the perturbed code
/// spaces, and returns the projective recovery. Refuses (ToleranceError) when
/// the KL defect is not below kl_tol.
RecoveryMap build_projective_recovery(const BosonicCode& code,
                                      const std::vector<FockOperator>& errors,
                                      double kl_tol = 1e-8);

/// Logical Kraus elements V† R_j K_i V of recovery-after-channel, flattened
/// over all (i, j) pairs. Dimensions: logical_dim x logical_dim each.
std::vector<Mat> logical_kraus(const BosonicCode& code, const KrausChannel& channel,
                               const RecoveryMap& recovery);

/// Choi matrix (d^2 x d^2, trace 1 for a trace-preserving map) of the map
/// with the given Kraus elements on a d-dimensional space.
Mat choi_matrix(const std::vector<Mat>& kraus, int dim);

/// Entanglement (process) fidelity of recovery-after-channel with the ideal
/// logical identity: ⟨Phi|Choi|Phi⟩ against the maximally entangled state.
double process_fidelity(const BosonicCode& code, const KrausChannel& channel,
                        const RecoveryMap& recovery);

/// Probability weight routed through the failure elements of the recovery,
/// averaged over a maximally mixed logical input.
double unassigned_probability(const BosonicCode& code, const KrausChannel& channel,
                              const RecoveryMap& recovery);

struct SweepRow {
  double chi = 0.0;
  double p_logical = 0.0;
  double p_physical = 0.0;
  double gain = 0.0;  // p_physical / p_logical; NaN at chi = 0
  double p_unassigned = 0.0;
};

/// Logical infidelity sweep of a single-mode code against the bare-mode
/// reference (trivial rank-2 code at the same cutoff, identity recovery).
/// channel_kind is "loss" or "dephasing"; the recovery is rebuilt from
/// `recovery_errors` once and reused across the grid.
std::vector<SweepRow> noise_sweep(const BosonicCode& code, const std::string& channel_kind,
                                  const std::vector<double>& chi_grid,
                                  const std::vector<FockOperator>& recovery_errors);

}  // namespace bcodex

#endif  // BCODEX_RECOVERY_HPP
