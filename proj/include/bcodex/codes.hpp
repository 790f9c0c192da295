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

#ifndef BCODEX_CODES_HPP
#define BCODEX_CODES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bcodex/fock.hpp"

namespace bcodex {

/// A finite-dimensional encoding: orthonormal codewords on a truncated Fock
/// space. Codewords are orthonormalized on construction (symmetric Loewdin
/// when the raw Gram deviates from identity); the raw Gram matrix is kept so
/// callers can see what the construction produced before cleanup.
struct BosonicCode {
  std::string family;
  std::map<std::string, double> params;
  std::vector<int> cutoffs;
  std::vector<FockVector> codewords;
  Mat raw_gram;

  int logical_dim() const { return static_cast<int>(codewords.size()); }
  int dim() const { return codewords.at(0).dim(); }

  /// d x k matrix whose columns are the codewords.
  Mat word_matrix() const;
  /// Projector onto the codespace.
  FockOperator projector() const;
};

/// Bare Fock qubit {|0>, |1>}; the break-even reference encoding.
BosonicCode trivial_code(int cutoff);

/// Spacing-N binomial qubit of degree D: words are binomial-weighted combs on
/// multiples of N with opposite parity of the comb position. Requires
/// N*(D+1) < cutoff.
BosonicCode binomial_code(int N, int D, int cutoff);

/// Rotation-symmetric cat qubit: modular Fock projection of one coherent
/// state onto classes n = 0 (mod 2N) -> |plus>, n = N (mod 2N) -> |minus>;
/// |0/1> = (|plus> +/- |minus>)/sqrt(2).
BosonicCode cat_code(int N, double alpha, int cutoff);

/// Equal-amplitude truncated comb qubit on the same modular classes.
/// Requires cutoff >= 4N.
BosonicCode number_phase_code(int N, int cutoff);

enum class GkpVariant { canonical_state, square_qubit };

/// Grid-state approximants with Gaussian-envelope Fock amplitudes
/// c_n = e^{-Delta^2 n} sum_l psi_n(x_l): canonical_state is the single comb
/// on multiples of sqrt(2 pi); square_qubit holds two words on the
/// alternating 2 sqrt(pi) lattices. Requires cutoff >= 4/Delta^2.
BosonicCode gkp_approx_code(double delta, int cutoff, GkpVariant variant);

/// Two-mode single-photon qubit {|10>, |01>} at cutoff 3 per mode.
BosonicCode dual_rail_code();

enum class ClyVariant { two_mode, three_mode };

/// Fixed multimode codes: {(|04>+|40>)/sqrt2, |22>} or
/// {(|300>+|030>+|003>)/sqrt3, |111>}.
BosonicCode cly_code(ClyVariant variant);

struct ChebyshevResult {
  BosonicCode code;
  double objective;            // achieved |<0|n^(D+1)|0> - <1|n^(D+1)|1>|
  double constraint_residual;  // max |constraint| at the reported optimum
  uint64_t seed;
  int restarts;
};

/// Search for a degree-D pair on the given Fock support maximizing the
/// leading moment gap subject to equal moments up to the degree, unit norms
/// and orthogonality. The mean is always matched (it is the leading
/// logical-Z term), so degree 0 coincides with degree 1. Penalized gradient
/// ascent with a Gauss-Newton feasibility polish, 32 seeded restarts. Throws
/// ToleranceError if no restart reaches constraint residual < 1e-8.
ChebyshevResult chebyshev_search(int D, const std::vector<int>& support, int cutoff,
                                 uint64_t seed);

struct CodeFootprint {
  int support_count;        // basis states with amplitude > 1e-12 in any E * word
  int error_space_count;    // mutually orthogonal spaces spanned by E * codespace
  bool mutually_orthogonal; // false if some spaces overlapped and were merged
  int modes;                // number of modes of the underlying space
};

CodeFootprint code_footprint(const BosonicCode& code, const std::vector<FockOperator>& errors);

}  // namespace bcodex

#endif  // BCODEX_CODES_HPP
