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

#ifndef BCODEX_SHIFT_HPP
#define BCODEX_SHIFT_HPP

#include <cstdint>
#include <vector>

#include "bcodex/common.hpp"

namespace bcodex::cv {

// Everything here works on quadrature phase space directly (plain doubles,
// ordering x1, p1, ..., xn, pn). No truncated mode spaces are involved.

/// Linear symplectic transformation on n modes.
struct SymplecticOp {
  int n_modes = 0;
  RealMat m;  // 2n x 2n

  static SymplecticOp make(int n_modes, RealMat m);  // checks Sᵀ Ω S = Ω
  SymplecticOp inverse() const;
};

/// Antisymmetric form matrix Ω, blocks [[0, 1], [-1, 0]] per mode.
RealMat omega(int n_modes);

/// Σ_m (u_x,m v_p,m − u_p,m v_x,m) = uᵀ Ω v.
double symplectic_form(const RealVec& u, const RealVec& v);

/// Controlled shift: x_target += x_control, p_control -= p_target.
SymplecticOp csum(int control, int target, int n_modes);

/// Pushes a post-gate shift vector back through the gate: returns S⁻¹ δ,
/// the equivalent pre-gate shift.
RealVec conjugated_shift(const SymplecticOp& s, const RealVec& delta);

/// Maximum-likelihood estimate of the data-mode x shift in the two-mode
/// sum-gate probe protocol, from the observed ancilla value.
double ml_estimate(double x_obs);

/// Stabilizer directions for the four-mode linear code together with the
/// logical x/p directions (rows of `logicals`).
struct NullifierSet {
  int n_modes = 0;
  RealMat rows;      // one nullifier direction per row, length 2n
  RealMat logicals;  // row 0: logical x direction, row 1: logical p direction
};

NullifierSet four_mode_nullifiers();

/// Symplectic products of each nullifier with the displacement direction.
RealVec syndrome(const NullifierSet& ns, const RealVec& direction);

/// A displacement is detectable when some nullifier has a nonzero
/// symplectic product with it.
bool displacement_detectable(const NullifierSet& ns, const RealVec& direction,
                             double tol = 1e-12);

/// Generator direction of the weight-two logical family e^{-i q (p1 + p2)}:
/// zero syndrome, nonzero product with the logical x direction.
RealVec transversal_logical_direction(double q);

/// Smallest weight (number of modes touched) of an undetectable displacement
/// with nontrivial logical action, found by exhaustive sparse search.
int code_distance(const NullifierSet& ns, double tol = 1e-12);

/// Stabilizer lattice of a single-mode grid code with d-dimensional logical
/// space (square, N = d) or a 1-dimensional rectangular variant (lambda).
struct GridLattice {
  RealMat generators;  // 2 x 2
  RealMat logicals;    // 2 x 2: rows are the logical shift vectors
};

GridLattice gkp_lattice(int N);                    // generators sqrt(2 pi N) e_x / e_p
GridLattice gkp_rectangular_lattice(double lam);   // aspect-ratio lambda, N = 1

/// All pairwise symplectic products of lattice generators divided by 2 pi;
/// integrality of these is the stabilizer commutation condition.
RealMat lattice_commutation(const GridLattice& lat);

/// Monte Carlo of a shift-error protocol. Sums are stored so every derived
/// statistic can be recomputed from the result alone.
struct ShiftMcResult {
  double sigma = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  int threads = 1;

  // raw accumulators over samples, in sample-index order
  double sum_x = 0.0, sum_x2 = 0.0, sum_x3 = 0.0, sum_x4 = 0.0;
  double sum_p = 0.0, sum_p2 = 0.0, sum_p3 = 0.0, sum_p4 = 0.0;
  std::uint64_t wraps = 0;  // |ancilla x| past half the grid spacing
  std::uint64_t flips = 0;  // logical flips (binning decoder only)
  double max_identity_residual = 0.0;  // per-sample algebraic cross-check

  // derived
  double residual_var_x = 0.0, residual_var_x_stderr = 0.0;
  double residual_var_p = 0.0, residual_var_p_stderr = 0.0;
  double wrap_rate = 0.0;
  double flip_rate = 0.0, flip_rate_stderr = 0.0;
  double analytic_flip_rate = 0.0;  // NaN when not applicable
};

/// Two-mode sum-gate repetition probe under iid N(0, sigma^2) shifts on all
/// four quadratures: corrects the data x by the ML estimate, leaves p alone.
/// Residual x variance halves; residual p variance is unchanged.
/// Deterministic for fixed (sigma, n, seed) at any thread count.
ShiftMcResult gkp_repetition_mc(double sigma, std::uint64_t n_samples, std::uint64_t seed,
                                int threads = 1);

/// Single-mode grid binning decoder under N(0, sigma^2) x shifts: rounds to
/// the nearest sqrt(pi) multiple and flips when that multiple is odd.
/// flip_rate estimates the analytic interval sum gkp_bin_flip_rate_analytic.
ShiftMcResult gkp_bin_mc(double sigma, std::uint64_t n_samples, std::uint64_t seed,
                         int threads = 1);

/// P(round(u / sqrt(pi)) odd) for u ~ N(0, sigma^2), as a truncated series of
/// Gaussian interval masses (absolute accuracy well below 1e-12).
double gkp_bin_flip_rate_analytic(double sigma);

/// Exhaustively checks that the binning decoder is exact on a uniform grid of
/// shifts with |u| < sqrt(pi)/2 (no flip, residual equals the shift).
bool gkp_bin_exact_on_grid(int points);

}  // namespace bcodex::cv

#endif  // BCODEX_SHIFT_HPP
