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

#include "bcodex/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "bcodex/rng.hpp"

namespace bcodex {

namespace {

constexpr double kPi = 3.141592653589793238462643;

Mat gram(const std::vector<FockVector>& words) {
  int k = static_cast<int>(words.size());
  Mat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = words[i].amps.dot(words[j].amps);
  return g;
}

// Loewdin symmetric orthonormalization: W -> W G^{-1/2}. Skipped when the
// raw Gram is already identity to machine precision, so exact constructions
// (disjoint-support combs) keep their exact amplitudes.
BosonicCode finalize(std::string family, std::map<std::string, double> params,
                     std::vector<FockVector> words) {
  BosonicCode code;
  code.family = std::move(family);
  code.params = std::move(params);
  code.cutoffs = words.at(0).cutoffs;
  code.raw_gram = gram(words);

  int k = static_cast<int>(words.size());
  double dev = (code.raw_gram - Mat::Identity(k, k)).cwiseAbs().maxCoeff();
  if (dev > 1e-14) {
    Eigen::SelfAdjointEigenSolver<Mat> es(code.raw_gram);
    certify(es.eigenvalues().minCoeff() > 1e-12,
            "codewords are (nearly) linearly dependent; cannot orthonormalize");
    Mat inv_sqrt = es.eigenvectors() *
                   es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                   es.eigenvectors().adjoint();
    Mat w(words[0].dim(), k);
    for (int j = 0; j < k; ++j) w.col(j) = words[j].amps;
    w = w * inv_sqrt;
    for (int j = 0; j < k; ++j) words[j] = FockVector::make(words[j].cutoffs, w.col(j));
  }
  code.codewords = std::move(words);

  Mat g2 = gram(code.codewords);
  certify((g2 - Mat::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-10,
          "codeword Gram matrix failed to orthonormalize");
  return code;
}

}  // namespace

Mat BosonicCode::word_matrix() const {
  Mat w(dim(), logical_dim());
  for (int j = 0; j < logical_dim(); ++j) w.col(j) = codewords[j].amps;
  return w;
}

FockOperator BosonicCode::projector() const {
  Mat w = word_matrix();
  return FockOperator::make(cutoffs, w * w.adjoint());
}

BosonicCode trivial_code(int cutoff) {
  require(cutoff >= 2, "trivial code needs cutoff >= 2");
  return finalize("trivial", {{"cutoff", double(cutoff)}},
                  {fock_basis_state(0, cutoff), fock_basis_state(1, cutoff)});
}

BosonicCode binomial_code(int N, int D, int cutoff) {
  require(N >= 1 && D >= 1, "binomial code needs N >= 1, D >= 1");
  require(N * (D + 1) < cutoff, "binomial code needs N*(D+1) < cutoff");
  Vec even = Vec::Zero(cutoff), odd = Vec::Zero(cutoff);
  double scale = std::pow(2.0, -D / 2.0);
  double binom = 1.0;  // C(D+1, m), exact for the sizes in play
  for (int m = 0; m <= D + 1; ++m) {
    (m % 2 == 0 ? even : odd)[N * m] = scale * std::sqrt(binom);
    binom = binom * (D + 1 - m) / (m + 1);
  }
  std::vector<FockVector> words = {FockVector::make({cutoff}, even),
                                   FockVector::make({cutoff}, odd)};
  return finalize("binomial",
                  {{"N", double(N)}, {"D", double(D)}, {"cutoff", double(cutoff)}},
                  std::move(words));
}

BosonicCode cat_code(int N, double alpha, int cutoff) {
  require(N >= 1, "cat code needs N >= 1");
  require(alpha > 0.0, "cat code needs alpha > 0");
  FockVector coh = coherent_state(alpha, cutoff);
  Vec plus = Vec::Zero(cutoff), minus = Vec::Zero(cutoff);
  for (int n = 0; n < cutoff; ++n) {
    int r = n % (2 * N);
    if (r == 0) plus[n] = coh.amps[n];
    if (r == N) minus[n] = coh.amps[n];
  }
  require(plus.norm() > 1e-12 && minus.norm() > 1e-12,
          "cat code classes have no support at this alpha/cutoff");
  plus /= plus.norm();
  minus /= minus.norm();
  Vec zero = (plus + minus) / std::sqrt(2.0);
  Vec one = (plus - minus) / std::sqrt(2.0);
  std::vector<FockVector> words = {FockVector::make({cutoff}, zero),
                                   FockVector::make({cutoff}, one)};
  return finalize("cat",
                  {{"N", double(N)}, {"alpha", alpha}, {"cutoff", double(cutoff)}},
                  std::move(words));
}

BosonicCode number_phase_code(int N, int cutoff) {
  require(N >= 1, "number-phase code needs N >= 1");
  require(cutoff >= 4 * N, "number-phase code needs cutoff >= 4N");
  Vec plus = Vec::Zero(cutoff), minus = Vec::Zero(cutoff);
  for (int n = 0; n < cutoff; n += 2 * N) plus[n] = 1.0;
  for (int n = N; n < cutoff; n += 2 * N) minus[n] = 1.0;
  plus /= plus.norm();
  minus /= minus.norm();
  Vec zero = (plus + minus) / std::sqrt(2.0);
  Vec one = (plus - minus) / std::sqrt(2.0);
  std::vector<FockVector> words = {FockVector::make({cutoff}, zero),
                                   FockVector::make({cutoff}, one)};
  return finalize("number_phase", {{"N", double(N)}, {"cutoff", double(cutoff)}},
                  std::move(words));
}

namespace {

// Gaussian-envelope comb amplitudes c_n = e^{-Delta^2 n} sum_l psi_n(x_l)
// over lattice nodes x_l = spacing*l + offset, |l| limited so that nodes
// beyond ~6 position-envelope widths are dropped.
Vec gkp_comb(double delta, int cutoff, double spacing, double offset) {
  int range = static_cast<int>(std::ceil(6.0 / (std::sqrt(2.0 * kPi) * delta)));
  std::vector<double> acc(cutoff, 0.0);
  for (int l = -range; l <= range; ++l) {
    std::vector<double> psi = hermite_functions(cutoff, spacing * l + offset);
    for (int n = 0; n < cutoff; ++n) acc[n] += psi[n];
  }
  Vec c(cutoff);
  for (int n = 0; n < cutoff; ++n) c[n] = std::exp(-delta * delta * n) * acc[n];
  return c / c.norm();
}

}  // namespace

BosonicCode gkp_approx_code(double delta, int cutoff, GkpVariant variant) {
  require(delta > 0.0 && delta < 1.0, "grid-state envelope must satisfy 0 < Delta < 1");
  require(cutoff >= 4.0 / (delta * delta), "grid state needs cutoff >= 4/Delta^2");
  std::map<std::string, double> params = {{"delta", delta}, {"cutoff", double(cutoff)}};
  if (variant == GkpVariant::canonical_state) {
    params["variant"] = 0;
    Vec c = gkp_comb(delta, cutoff, std::sqrt(2.0 * kPi), 0.0);
    return finalize("gkp_canonical", std::move(params),
                    {FockVector::make({cutoff}, std::move(c))});
  }
  params["variant"] = 1;
  double spacing = 2.0 * std::sqrt(kPi);
  Vec w0 = gkp_comb(delta, cutoff, spacing, 0.0);
  Vec w1 = gkp_comb(delta, cutoff, spacing, std::sqrt(kPi));
  return finalize("gkp_square_qubit", std::move(params),
                  {FockVector::make({cutoff}, std::move(w0)),
                   FockVector::make({cutoff}, std::move(w1))});
}

BosonicCode dual_rail_code() {
  std::vector<int> cut = {3, 3};
  return finalize("dual_rail", {},
                  {fock_basis_state({1, 0}, cut), fock_basis_state({0, 1}, cut)});
}

BosonicCode cly_code(ClyVariant variant) {
  if (variant == ClyVariant::two_mode) {
    std::vector<int> cut = {6, 6};
    Vec w0 = Vec::Zero(36), w1 = Vec::Zero(36);
    w0[flat_index({0, 4}, cut)] = 1.0 / std::sqrt(2.0);
    w0[flat_index({4, 0}, cut)] = 1.0 / std::sqrt(2.0);
    w1[flat_index({2, 2}, cut)] = 1.0;
    return finalize("cly_two_mode", {},
                    {FockVector::make(cut, w0), FockVector::make(cut, w1)});
  }
  std::vector<int> cut = {5, 5, 5};
  Vec w0 = Vec::Zero(125), w1 = Vec::Zero(125);
  w0[flat_index({3, 0, 0}, cut)] = 1.0 / std::sqrt(3.0);
  w0[flat_index({0, 3, 0}, cut)] = 1.0 / std::sqrt(3.0);
  w0[flat_index({0, 0, 3}, cut)] = 1.0 / std::sqrt(3.0);
  w1[flat_index({1, 1, 1}, cut)] = 1.0;
  return finalize("cly_three_mode", {},
                  {FockVector::make(cut, w0), FockVector::make(cut, w1)});
}

// ---- moment-gap search ------------------------------------------------------

namespace {

struct SearchProblem {
  std::vector<double> levels;  // Fock levels of the support
  int D;

  int S() const { return static_cast<int>(levels.size()); }

  double mom(const RealVec& x, int ell) const {
    double s = 0.0;
    for (int i = 0; i < S(); ++i) s += std::pow(levels[i], ell) * x[i] * x[i];
    return s;
  }

  // Constraints: norms, orthogonality, shared moments 1..D.
  RealVec constraints(const RealVec& z) const {
    int S_ = S();
    RealVec x0 = z.head(S_), x1 = z.tail(S_);
    RealVec c(3 + D);
    c[0] = x0.squaredNorm() - 1.0;
    c[1] = x1.squaredNorm() - 1.0;
    c[2] = x0.dot(x1);
    for (int l = 1; l <= D; ++l) c[2 + l] = mom(x0, l) - mom(x1, l);
    return c;
  }

  RealMat jacobian(const RealVec& z) const {
    int S_ = S();
    RealVec x0 = z.head(S_), x1 = z.tail(S_);
    RealMat J = RealMat::Zero(3 + D, 2 * S_);
    J.row(0).head(S_) = 2.0 * x0;
    J.row(1).tail(S_) = 2.0 * x1;
    J.row(2).head(S_) = x1;
    J.row(2).tail(S_) = x0;
    for (int l = 1; l <= D; ++l)
      for (int i = 0; i < S_; ++i) {
        double nl = std::pow(levels[i], l);
        J(2 + l, i) = 2.0 * nl * x0[i];
        J(2 + l, S_ + i) = -2.0 * nl * x1[i];
      }
    return J;
  }

  double objective(const RealVec& z) const {
    return mom(z.head(S()), D + 1) - mom(z.tail(S()), D + 1);
  }

  RealVec objective_grad(const RealVec& z) const {
    int S_ = S();
    RealVec g(2 * S_);
    for (int i = 0; i < S_; ++i) {
      double nl = std::pow(levels[i], D + 1);
      g[i] = 2.0 * nl * z[i];
      g[S_ + i] = -2.0 * nl * z[S_ + i];
    }
    return g;
  }
};

// Gauss-Newton steps toward the constraint manifold.
bool polish_feasible(const SearchProblem& prob, RealVec& z) {
  for (int it = 0; it < 80; ++it) {
    RealVec c = prob.constraints(z);
    if (c.cwiseAbs().maxCoeff() < 1e-13) return true;
    RealMat J = prob.jacobian(z);
    RealMat JJt = J * J.transpose();
    Eigen::LDLT<RealMat> solver(JJt + 1e-14 * RealMat::Identity(JJt.rows(), JJt.cols()));
    z -= J.transpose() * solver.solve(c);
  }
  return prob.constraints(z).cwiseAbs().maxCoeff() < 1e-10;
}

}  // namespace

ChebyshevResult chebyshev_search(int D, const std::vector<int>& support, int cutoff,
                                 uint64_t seed) {
  require(D >= 0, "search needs D >= 0");
  const int deg = std::max(D, 1);  // the mean is always matched
  require(static_cast<int>(support.size()) >= deg + 2,
          "support too small for the moment constraints");
  std::vector<int> sorted = support;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "support levels must be distinct");
  require(sorted.front() >= 0 && sorted.back() < cutoff, "support outside cutoff");

  SearchProblem prob;
  prob.D = deg;
  for (int n : sorted) prob.levels.push_back(n);
  int S = prob.S();

  const int kRestarts = 32;
  bool found = false;
  RealVec best;
  double best_obj = -1.0;

  for (int r = 0; r < kRestarts; ++r) {
    CounterRng rng(seed, r);
    RealVec z(2 * S);
    for (int i = 0; i < 2 * S; ++i) z[i] = 2.0 * rng.uniform(i) - 1.0;
    z.head(S).normalize();
    z.tail(S).normalize();

    // Penalty phase: ascend objective - mu * |c|^2 with escalating mu.
    double step = 0.05;
    for (double mu : {1e2, 1e3, 1e4, 1e5}) {
      for (int it = 0; it < 400; ++it) {
        RealVec c = prob.constraints(z);
        RealMat J = prob.jacobian(z);
        RealVec g = prob.objective_grad(z) - 2.0 * mu * (J.transpose() * c);
        double before = prob.objective(z) - mu * c.squaredNorm();
        RealVec znew = z + step * g;
        RealVec cnew = prob.constraints(znew);
        double after = prob.objective(znew) - mu * cnew.squaredNorm();
        if (after > before) {
          z = znew;
          step = std::min(step * 1.25, 0.25);
        } else {
          step *= 0.5;
          if (step < 1e-12) break;
        }
      }
      step = std::max(step, 1e-6);
    }

    if (!polish_feasible(prob, z)) continue;

    // Projected-gradient refinement on the constraint manifold.
    double pstep = 0.02;
    for (int it = 0; it < 200; ++it) {
      RealMat J = prob.jacobian(z);
      RealMat JJt = J * J.transpose();
      Eigen::LDLT<RealMat> solver(JJt + 1e-14 * RealMat::Identity(JJt.rows(), JJt.cols()));
      RealVec g = prob.objective_grad(z);
      double sgn = prob.objective(z) >= 0 ? 1.0 : -1.0;
      RealVec gt = sgn * (g - J.transpose() * solver.solve(J * g));
      if (gt.norm() < 1e-12) break;
      RealVec znew = z + pstep * gt;
      if (!polish_feasible(prob, znew)) break;
      if (std::abs(prob.objective(znew)) > std::abs(prob.objective(z))) {
        z = znew;
        pstep = std::min(pstep * 1.25, 0.1);
      } else {
        pstep *= 0.5;
        if (pstep < 1e-10) break;
      }
    }

    double obj = std::abs(prob.objective(z));
    if (prob.constraints(z).cwiseAbs().maxCoeff() < 1e-8 && obj > best_obj) {
      best_obj = obj;
      best = z;
      found = true;
    }
  }

  certify(found, "moment-gap search found no feasible pair on this support");

  // Order words so word 0 carries the larger top moment.
  RealVec x0 = best.head(S), x1 = best.tail(S);
  if (prob.objective(best) < 0) std::swap(x0, x1);
  Vec w0 = Vec::Zero(cutoff), w1 = Vec::Zero(cutoff);
  for (int i = 0; i < S; ++i) {
    w0[sorted[i]] = x0[i];
    w1[sorted[i]] = x1[i];
  }

  ChebyshevResult res;
  res.objective = best_obj;
  res.constraint_residual = prob.constraints(best).cwiseAbs().maxCoeff();
  res.seed = seed;
  res.restarts = kRestarts;
  res.code = finalize("chebyshev",
                      {{"D", double(D)}, {"cutoff", double(cutoff)}},
                      {FockVector::make({cutoff}, w0), FockVector::make({cutoff}, w1)});
  return res;
}

CodeFootprint code_footprint(const BosonicCode& code,
                             const std::vector<FockOperator>& errors) {
  require(!errors.empty(), "footprint needs at least one error");
  CodeFootprint fp{};
  fp.modes = static_cast<int>(code.cutoffs.size());

  // Support = basis states touched by any image E |word>.
  std::vector<bool> used(code.dim(), false);
  Mat V = code.word_matrix();
  std::vector<Mat> spaces;
  for (const FockOperator& e : errors) {
    require(e.cutoffs == code.cutoffs, "error cutoffs must match the code");
    Mat W = e.m * V;
    for (int i = 0; i < W.rows(); ++i)
      for (int k = 0; k < W.cols(); ++k)
        if (std::abs(W(i, k)) > 1e-12) used[i] = true;
    Eigen::JacobiSVD<Mat> svd(W, Eigen::ComputeThinU);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-10) ++rank;
    if (rank > 0) spaces.push_back(svd.matrixU().leftCols(rank));
  }
  fp.support_count = static_cast<int>(std::count(used.begin(), used.end(), true));

  // Merge spaces that overlap; the count is of mutually orthogonal classes.
  int n = static_cast<int>(spaces.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  fp.mutually_orthogonal = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((spaces[i].adjoint() * spaces[j]).cwiseAbs().maxCoeff() > 1e-10) {
        fp.mutually_orthogonal = false;
        parent[find(i)] = find(j);
      }
  std::vector<bool> is_root(n, false);
  for (int i = 0; i < n; ++i) is_root[find(i)] = true;
  fp.error_space_count = static_cast<int>(std::count(is_root.begin(), is_root.end(), true));
  return fp;
}

}  // namespace bcodex
