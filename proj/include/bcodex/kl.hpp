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

#ifndef BCODEX_KL_HPP
#define BCODEX_KL_HPP

#include <optional>
#include <string>
#include <vector>

#include "bcodex/codes.hpp"

namespace bcodex {

/// Error-correction condition report for a code and an error list.
/// lambda(i,j) = Tr(P Ei† Ej P)/d; pair_defect(i,j) is the max-abs entry of
/// P Ei† Ej P − lambda(i,j) P; defect is the max over pairs. The error set is
/// correctable when defect < tolerance.
struct KLReport {
  std::vector<std::string> labels;
  Mat lambda;
  RealMat pair_defect;
  double defect = 0.0;
  double tolerance = 0.0;
  bool correctable = false;
};

KLReport kl_matrix(const BosonicCode& code, const std::vector<FockOperator>& errors,
                   const std::vector<std::string>& labels, double tolerance = 1e-8);

/// One error's detection status: P E P = scalar * P within tolerance.
struct DetectabilityRow {
  std::string label;
  bool detectable = false;
  double deviation = 0.0;  // max |P E P - scalar P|
  cdouble scalar;          // Tr(P E P)/d
};

DetectabilityRow detectability(const BosonicCode& code, const FockOperator& error,
                               const std::string& label, double tolerance = 1e-8);

/// Detection table for a named error family applied to every mode:
/// "loss_powers" (a^k), "gain_powers" ((a†)^k), "dephasing_powers" (n^k),
/// "phasor_shifts" (number-shift ladders, k and -k); k = 1..max_order.
/// "rotations" uses angles 2 pi k / (max_order + 1).
std::vector<DetectabilityRow> detectability_report(const BosonicCode& code,
                                                   const std::string& family,
                                                   int max_order,
                                                   double tolerance = 1e-8);

/// Z-part coefficient of the projected moment operator for the spacing-N cat
/// pair at amplitude alpha: (⟨plus|n^ell|plus⟩ − ⟨minus|n^ell|minus⟩)/2 where
/// plus/minus are the modular classes 0 and N (mod 2N).
double cat_zterm(int N, double alpha, int cutoff, int ell);

/// First zero of cat_zterm in [alpha_lo, alpha_hi] by coarse scan + bisection
/// to |zterm| < 1e-10; empty when the sign never changes.
std::optional<double> cat_sweet_spot(int N, int ell, double alpha_lo, double alpha_hi,
                                     int cutoff);

}  // namespace bcodex

#endif  // BCODEX_KL_HPP
