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

#include "bcodex/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bcodex/version.hpp"

namespace bcodex {

namespace {

double number_or_nan(const ojson& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

ojson nan_to_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

std::vector<double> real_parts(const Vec& v) {
  std::vector<double> out(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) out[i] = v(i).real();
  return out;
}

std::vector<double> imag_parts(const Vec& v) {
  std::vector<double> out(static_cast<size_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) out[i] = v(i).imag();
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ojson to_json(const Mat& m) {
  ojson j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(static_cast<size_t>(m.size()));
  im.reserve(static_cast<size_t>(m.size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j;
}

Mat mat_from_json(const ojson& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  require(static_cast<int>(re.size()) == rows * cols && re.size() == im.size(),
          "mat_from_json: size mismatch");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      size_t k = static_cast<size_t>(r) * cols + c;
      m(r, c) = cdouble(re[k], im[k]);
    }
  return m;
}

ojson to_json(const RealMat& m) {
  ojson j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<size_t>(m.size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j["data"] = data;
  return j;
}

RealMat real_mat_from_json(const ojson& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  auto data = j.at("data").get<std::vector<double>>();
  require(static_cast<int>(data.size()) == rows * cols, "real_mat_from_json: size mismatch");
  RealMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = data[static_cast<size_t>(r) * cols + c];
  return m;
}

ojson to_json(const FockVector& v) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["cutoffs"] = v.cutoffs;
  j["re"] = real_parts(v.amps);
  j["im"] = imag_parts(v.amps);
  j["tail_mass"] = v.tail_mass;
  j["warning"] = v.warning;
  return j;
}

FockVector fock_vector_from_json(const ojson& j) {
  auto cutoffs = j.at("cutoffs").get<std::vector<int>>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  require(re.size() == im.size(), "fock_vector_from_json: re/im size mismatch");
  Vec amps(static_cast<int>(re.size()));
  for (size_t i = 0; i < re.size(); ++i) amps(static_cast<int>(i)) = cdouble(re[i], im[i]);
  return FockVector::make(cutoffs, amps);
}

ojson to_json(const FockOperator& op) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["cutoffs"] = op.cutoffs;
  j["matrix"] = to_json(op.m);
  return j;
}

FockOperator fock_operator_from_json(const ojson& j) {
  auto cutoffs = j.at("cutoffs").get<std::vector<int>>();
  return FockOperator::make(cutoffs, mat_from_json(j.at("matrix")));
}

ojson to_json(const BosonicCode& code) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["family"] = code.family;
  ojson params = ojson::object();
  for (const auto& [k, v] : code.params) params[k] = v;
  j["params"] = params;
  j["cutoffs"] = code.cutoffs;
  j["logical_dim"] = code.logical_dim();
  ojson words = ojson::array();
  for (const FockVector& w : code.codewords) words.push_back(to_json(w));
  j["codewords"] = words;
  j["raw_gram"] = to_json(code.raw_gram);
  return j;
}

BosonicCode code_from_json(const ojson& j) {
  BosonicCode code;
  code.family = j.at("family").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) code.params[k] = v.get<double>();
  code.cutoffs = j.at("cutoffs").get<std::vector<int>>();
  for (const ojson& w : j.at("codewords")) code.codewords.push_back(fock_vector_from_json(w));
  code.raw_gram = mat_from_json(j.at("raw_gram"));
  return code;
}

ojson to_json(const KLReport& rep) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["labels"] = rep.labels;
  j["lambda"] = to_json(rep.lambda);
  j["pair_defect"] = to_json(rep.pair_defect);
  j["defect"] = rep.defect;
  j["tolerance"] = rep.tolerance;
  j["correctable"] = rep.correctable;
  return j;
}

ojson to_json(const std::vector<DetectabilityRow>& rows) {
  ojson arr = ojson::array();
  for (const DetectabilityRow& r : rows) {
    ojson j;
    j["label"] = r.label;
    j["detectable"] = r.detectable;
    j["deviation"] = r.deviation;
    j["scalar_re"] = r.scalar.real();
    j["scalar_im"] = r.scalar.imag();
    arr.push_back(j);
  }
  return arr;
}

ojson to_json(const KrausChannel& ch, bool include_kraus) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["kind"] = ch.kind;
  j["strength"] = ch.strength;
  j["cutoffs"] = ch.cutoffs;
  j["n_kraus"] = ch.kraus.size();
  j["certified_levels"] = ch.certified_levels;
  j["completeness_defect"] = ch.completeness_defect;
  if (include_kraus) {
    ojson arr = ojson::array();
    for (const Mat& k : ch.kraus) arr.push_back(to_json(k));
    j["kraus"] = arr;
  }
  return j;
}

ojson to_json(const cv::ShiftMcResult& r) {
  ojson j;
  j["format_version"] = kFormatVersion;
  // the worker-thread count is an execution detail (results never depend on
  // it), so like wall time it stays out of the artifact
  j["sigma"] = r.sigma;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["sum_x"] = r.sum_x;
  j["sum_x2"] = r.sum_x2;
  j["sum_x3"] = r.sum_x3;
  j["sum_x4"] = r.sum_x4;
  j["sum_p"] = r.sum_p;
  j["sum_p2"] = r.sum_p2;
  j["sum_p3"] = r.sum_p3;
  j["sum_p4"] = r.sum_p4;
  j["wraps"] = r.wraps;
  j["flips"] = r.flips;
  j["max_identity_residual"] = r.max_identity_residual;
  j["residual_var_x"] = r.residual_var_x;
  j["residual_var_x_stderr"] = r.residual_var_x_stderr;
  j["residual_var_p"] = r.residual_var_p;
  j["residual_var_p_stderr"] = r.residual_var_p_stderr;
  j["wrap_rate"] = r.wrap_rate;
  j["flip_rate"] = r.flip_rate;
  j["flip_rate_stderr"] = r.flip_rate_stderr;
  j["analytic_flip_rate"] = nan_to_null(r.analytic_flip_rate);
  return j;
}

cv::ShiftMcResult shift_mc_from_json(const ojson& j) {
  cv::ShiftMcResult r;
  r.sigma = j.at("sigma").get<double>();
  r.n_samples = j.at("n_samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.sum_x = j.at("sum_x").get<double>();
  r.sum_x2 = j.at("sum_x2").get<double>();
  r.sum_x3 = j.at("sum_x3").get<double>();
  r.sum_x4 = j.at("sum_x4").get<double>();
  r.sum_p = j.at("sum_p").get<double>();
  r.sum_p2 = j.at("sum_p2").get<double>();
  r.sum_p3 = j.at("sum_p3").get<double>();
  r.sum_p4 = j.at("sum_p4").get<double>();
  r.wraps = j.at("wraps").get<std::uint64_t>();
  r.flips = j.at("flips").get<std::uint64_t>();
  r.max_identity_residual = j.at("max_identity_residual").get<double>();
  r.residual_var_x = j.at("residual_var_x").get<double>();
  r.residual_var_x_stderr = j.at("residual_var_x_stderr").get<double>();
  r.residual_var_p = j.at("residual_var_p").get<double>();
  r.residual_var_p_stderr = j.at("residual_var_p_stderr").get<double>();
  r.wrap_rate = j.at("wrap_rate").get<double>();
  r.flip_rate = j.at("flip_rate").get<double>();
  r.flip_rate_stderr = j.at("flip_rate_stderr").get<double>();
  r.analytic_flip_rate = number_or_nan(j.at("analytic_flip_rate"));
  return r;
}

std::string mc_csv(const cv::ShiftMcResult& r) {
  std::ostringstream out;
  out << "sigma,n_samples,seed,residual_var_x,residual_var_x_stderr,residual_var_p,"
         "residual_var_p_stderr,wrap_rate,flip_rate,flip_rate_stderr,analytic_flip_rate\n";
  out << format_double(r.sigma) << ',' << r.n_samples << ',' << r.seed << ','
      << format_double(r.residual_var_x) << ',' << format_double(r.residual_var_x_stderr)
      << ',' << format_double(r.residual_var_p) << ','
      << format_double(r.residual_var_p_stderr) << ',' << format_double(r.wrap_rate) << ','
      << format_double(r.flip_rate) << ',' << format_double(r.flip_rate_stderr) << ','
      << format_double(r.analytic_flip_rate) << '\n';
  return out.str();
}

ojson to_json(const std::vector<SweepRow>& rows) {
  ojson arr = ojson::array();
  for (const SweepRow& r : rows) {
    ojson j;
    j["chi"] = r.chi;
    j["p_logical"] = r.p_logical;
    j["p_physical"] = r.p_physical;
    j["gain"] = nan_to_null(r.gain);
    j["p_unassigned"] = r.p_unassigned;
    arr.push_back(j);
  }
  return arr;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "chi,p_logical,p_physical,gain\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.chi) << ',' << format_double(r.p_logical) << ','
        << format_double(r.p_physical) << ',' << format_double(r.gain) << '\n';
  }
  return out.str();
}

ojson to_json(const ChebyshevResult& res) {
  ojson j;
  j["format_version"] = kFormatVersion;
  j["code"] = to_json(res.code);
  j["objective"] = res.objective;
  j["constraint_residual"] = res.constraint_residual;
  j["seed"] = res.seed;
  j["restarts"] = res.restarts;
  return j;
}

ojson to_json(const CodeFootprint& fp) {
  ojson j;
  j["support_count"] = fp.support_count;
  j["error_space_count"] = fp.error_space_count;
  j["mutually_orthogonal"] = fp.mutually_orthogonal;
  j["modes"] = fp.modes;
  return j;
}

ojson run_artifact(const std::string& command, const ojson& config_echo, ojson results) {
  ojson j;
  j["command"] = command;
  j["library_version"] = kVersion;
  j["format_version"] = kFormatVersion;
  j["config"] = config_echo;
  j["results"] = std::move(results);
  return j;
}

std::string dump_artifact(const ojson& artifact) { return artifact.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output path: " + path);
  out << text;
  out.flush();
  if (!out) throw ValidationError("failed writing output path: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input path: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bcodex
