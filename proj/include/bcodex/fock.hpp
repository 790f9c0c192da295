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

#ifndef BCODEX_FOCK_HPP
#define BCODEX_FOCK_HPP

#include <span>
#include <string>
#include <vector>

#include "bcodex/common.hpp"

namespace bcodex {

/// Number of amplitudes for a list of per-mode cutoffs.
int total_dim(const std::vector<int>& cutoffs);

/// Row-major flat index of a multimode occupation (mode 0 slowest).
int flat_index(const std::vector<int>& ns, const std::vector<int>& cutoffs);

/// Occupation of each mode for a row-major flat index; inverse of flat_index.
std::vector<int> decode_index(int idx, const std::vector<int>& cutoffs);

/// A pure state on a truncated Fock space. Multimode amplitudes are stored
/// row-major with the first mode slowest. `tail_mass` is the probability on
/// the top ceil(cutoff/10) levels of each mode — the truncation health gauge.
struct FockVector {
  std::vector<int> cutoffs;
  Vec amps;
  double tail_mass = 0.0;
  std::string warning;  // non-empty if construction attached a caveat

  static FockVector make(std::vector<int> cutoffs, Vec amps);

  int dim() const { return static_cast<int>(amps.size()); }
  int n_modes() const { return static_cast<int>(cutoffs.size()); }
  double norm() const { return amps.norm(); }
  FockVector normalized() const;
};

/// A dense operator on a truncated Fock space.
struct FockOperator {
  std::vector<int> cutoffs;
  Mat m;

  static FockOperator make(std::vector<int> cutoffs, Mat m);

  int dim() const { return static_cast<int>(m.rows()); }
  FockOperator adjoint() const { return {cutoffs, m.adjoint()}; }
  /// Max |U†U − I| entry over rows/cols below dim() − guard_levels.
  double unitarity_defect(int guard_levels = 0) const;
};

/// Hermitian, unit-trace, PSD matrix. Construction validates all three;
/// `trace_tol` can be widened by channel application, which documents its
/// own trace-preservation bound instead of renormalizing.
struct DensityOperator {
  std::vector<int> cutoffs;
  Mat m;

  static DensityOperator make(std::vector<int> cutoffs, Mat m,
                              double trace_tol = 1e-10);
  static DensityOperator pure(const FockVector& psi);

  int dim() const { return static_cast<int>(m.rows()); }
  double trace_real() const { return m.trace().real(); }
};

// ---- states ---------------------------------------------------------------

FockVector fock_basis_state(const std::vector<int>& ns, const std::vector<int>& cutoffs);
FockVector fock_basis_state(int n, int cutoff);

/// Coherent state, renormalized after truncation. Requires |alpha|^2 <=
/// cutoff/4; attaches a warning when tail_mass > 1e-8 and refuses > 1e-4.
FockVector coherent_state(cdouble alpha, int cutoff);

/// Truncated phase state: amplitudes e^{i phi n} / sqrt(cutoff).
FockVector phase_state(double phi, int cutoff);

// ---- single-mode operator factories ----------------------------------------

FockOperator identity_op(int cutoff);
FockOperator lower_op(int cutoff);
FockOperator raise_op(int cutoff);
FockOperator number_op(int cutoff);
FockOperator position_op(int cutoff);
FockOperator momentum_op(int cutoff);
/// diag(e^{i phi n})
FockOperator rotation_op(double phi, int cutoff);
/// diag(e^{-beta n}); no zero-point factor.
FockOperator cooling_op(double beta, int cutoff);
/// Number-shift ladder: ell >= 0 gives sum_n |n+ell><n|; negative ell gives
/// the adjoint sum_n |n><n+|ell||.
FockOperator phasor_op(long ell, int cutoff);
/// exp(alpha a† − alpha* a) with alpha = (qx + i qp)/sqrt(2); shifts the
/// position expectation by qx and momentum by qp. Exactly unitary (the
/// truncated generator is anti-Hermitian).
FockOperator displacement_op(double qx, double qp, int cutoff);

/// Named dispatcher used by the CLI and tests; `kind` is one of lower, raise,
/// number, position, momentum, rotation, cooling, phasor (param = phi, beta,
/// or ell as appropriate).
FockOperator standard_operator(const std::string& kind, double param, int cutoff);

/// Embed a single-mode operator into a multimode space at `mode`.
FockOperator embed(const FockOperator& op, const std::vector<int>& cutoffs, int mode);

// ---- composition and diagnostics -------------------------------------------

FockVector tensor(const FockVector& a, const FockVector& b);
FockOperator tensor(const FockOperator& a, const FockOperator& b);

FockVector apply(const FockOperator& op, const FockVector& v);
cdouble expectation(const FockVector& v, const FockOperator& op);
cdouble overlap(const FockVector& a, const FockVector& b);

/// <(total n)^ell>; requires the result to be representable (finite).
double moment(const FockVector& v, int ell);

/// Normalized Hermite functions psi_0..psi_{nmax-1} at x, by the stable
/// three-term recurrence. psi_0 = pi^{-1/4} e^{-x^2/2}.
std::vector<double> hermite_functions(int nmax, double x);

/// Wavefunction samples f(x_k) = sum_n c_n psi_n(x_k) (single mode only).
std::vector<cdouble> position_wavefunction(const FockVector& v, std::span<const double> xs);

/// Probability over `bins` phase-window states at phi_j = 2 pi j / bins,
/// normalized to sum to one (single mode only).
std::vector<double> phase_distribution(const FockVector& v, int bins);

}  // namespace bcodex

#endif  // BCODEX_FOCK_HPP
