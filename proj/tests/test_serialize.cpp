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
#include <cstdlib>
#include <filesystem>
#include <string>

#include "bcodex/serialize.hpp"
#include "bcodex/version.hpp"
#include "oracles.hpp"

using namespace bcodex;

namespace {

// Serialize -> text -> parse, as an artifact on disk would travel.
ojson through_text(const ojson& j) { return ojson::parse(dump_artifact(j)); }

}  // namespace

TEST_CASE("format_double survives a text round trip bitwise") {
  for (double x : {1.0, 0.1, -0.1, 1.0 / 3.0, std::sqrt(2.0), 6.02214076e23, 5e-324,
                   -1.7976931348623157e308, 0.0}) {
    std::string s = format_double(x);
    double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == x);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("complex and real matrices round trip bitwise through JSON text") {
  Mat m(2, 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c)
      m(r, c) = cdouble(std::sqrt(2.0 + r + 3 * c), -1.0 / (1.0 + r + c));
  Mat back = mat_from_json(through_text(to_json(m)));
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

  RealMat rm(3, 2);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 2; ++c) rm(r, c) = std::cbrt(7.0 + 5 * r + c);
  RealMat rback = real_mat_from_json(through_text(to_json(rm)));
  CHECK((rback - rm).cwiseAbs().maxCoeff() == 0.0);

  ojson bad = to_json(m);
  bad["re"].erase(0);
  CHECK_THROWS_AS(mat_from_json(bad), ValidationError);
}

TEST_CASE("state vectors round trip bitwise, including recomputed bookkeeping") {
  FockVector v = coherent_state(cdouble(1.1, -0.6), 24);
  ojson j = to_json(v);
  CHECK(j.at("format_version").get<int>() == kFormatVersion);
  FockVector back = fock_vector_from_json(through_text(j));
  REQUIRE(back.cutoffs == v.cutoffs);
  CHECK((back.amps - v.amps).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.tail_mass == v.tail_mass);  // recomputed from identical amplitudes
  CHECK(back.warning == v.warning);

  ojson broken = j;
  broken["im"].erase(0);
  CHECK_THROWS_AS(fock_vector_from_json(broken), ValidationError);
}

TEST_CASE("operators round trip bitwise") {
  FockOperator op = displacement_op(0.3, -1.2, 18);
  FockOperator back = fock_operator_from_json(through_text(to_json(op)));
  REQUIRE(back.cutoffs == op.cutoffs);
  CHECK((back.m - op.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("codes round trip with family, parameters, and exact amplitudes") {
  BosonicCode code = binomial_code(2, 2, 20);
  ojson j = to_json(code);
  CHECK(j.at("logical_dim").get<int>() == 2);
  BosonicCode back = code_from_json(through_text(j));
  CHECK(back.family == code.family);
  CHECK(back.cutoffs == code.cutoffs);
  REQUIRE(back.codewords.size() == code.codewords.size());
  for (size_t k = 0; k < code.codewords.size(); ++k)
    CHECK((back.codewords[k].amps - code.codewords[k].amps).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.raw_gram - code.raw_gram).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(back.params.count("N") == 1);
  CHECK(back.params.at("N") == 2.0);
}

TEST_CASE("channel certificates expose size and defect; matrices only on request") {
  KrausChannel ch = loss_channel(0.05, 12);
  ojson brief = to_json(ch);
  CHECK(brief.contains("kind"));
  CHECK(brief.at("kind").get<std::string>() == "loss");
  CHECK(brief.at("n_kraus").get<size_t>() == ch.kraus.size());
  CHECK(!brief.contains("kraus"));
  ojson full = to_json(ch, true);
  REQUIRE(full.contains("kraus"));
  REQUIRE(full.at("kraus").size() == ch.kraus.size());
  Mat k0 = mat_from_json(through_text(full).at("kraus").at(0));
  CHECK((k0 - ch.kraus[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("monte carlo results round trip; absent analytic rates travel as null") {
  cv::ShiftMcResult r = cv::gkp_repetition_mc(0.17, 5000, 99, 2);
  ojson j = to_json(r);
  CHECK(j.at("analytic_flip_rate").is_null());
  std::string text = dump_artifact(j);
  CHECK(text.find("\"analytic_flip_rate\": null") != std::string::npos);
  cv::ShiftMcResult back = shift_mc_from_json(ojson::parse(text));
  CHECK(back.sigma == r.sigma);
  CHECK(back.n_samples == r.n_samples);
  CHECK(back.seed == r.seed);
  CHECK(!j.contains("threads"));  // execution detail, kept out of artifacts
  CHECK(back.sum_x == r.sum_x);
  CHECK(back.sum_x2 == r.sum_x2);
  CHECK(back.sum_x3 == r.sum_x3);
  CHECK(back.sum_x4 == r.sum_x4);
  CHECK(back.sum_p == r.sum_p);
  CHECK(back.sum_p2 == r.sum_p2);
  CHECK(back.sum_p3 == r.sum_p3);
  CHECK(back.sum_p4 == r.sum_p4);
  CHECK(back.wraps == r.wraps);
  CHECK(back.flips == r.flips);
  CHECK(back.max_identity_residual == r.max_identity_residual);
  CHECK(back.residual_var_x == r.residual_var_x);
  CHECK(back.residual_var_p == r.residual_var_p);
  CHECK(back.wrap_rate == r.wrap_rate);
  CHECK(std::isnan(back.analytic_flip_rate));

  cv::ShiftMcResult b = cv::gkp_bin_mc(0.35, 5000, 7);
  cv::ShiftMcResult bback = shift_mc_from_json(through_text(to_json(b)));
  CHECK(bback.analytic_flip_rate == b.analytic_flip_rate);
  CHECK(bback.flip_rate == b.flip_rate);
  CHECK(bback.flips == b.flips);
}

TEST_CASE("csv emitters: fixed headers, full-precision fields, nan spelled out") {
  cv::ShiftMcResult r = cv::gkp_repetition_mc(0.17, 5000, 99);
  std::string csv = mc_csv(r);
  std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "sigma,n_samples,seed,residual_var_x,residual_var_x_stderr,residual_var_p,"
        "residual_var_p_stderr,wrap_rate,flip_rate,flip_rate_stderr,analytic_flip_rate");
  CHECK(csv.back() == '\n');
  CHECK(csv.find("nan") != std::string::npos);  // analytic column, not applicable here
  // the variance field parses back to the exact double
  std::string row = csv.substr(csv.find('\n') + 1);
  for (int skip = 0; skip < 3; ++skip) row = row.substr(row.find(',') + 1);
  double var = std::strtod(row.c_str(), nullptr);
  CHECK(var == r.residual_var_x);

  std::vector<SweepRow> rows(2);
  rows[0].chi = 0.0;
  rows[0].p_logical = 0.0;
  rows[0].p_physical = 0.0;
  rows[0].gain = std::nan("");
  rows[1].chi = 1e-3;
  rows[1].p_logical = 2.5e-7;
  rows[1].p_physical = 1.0 / 3.0e3;
  rows[1].gain = rows[1].p_physical / rows[1].p_logical;
  std::string sweep = sweep_csv(rows);
  CHECK(sweep.substr(0, sweep.find('\n')) == "chi,p_logical,p_physical,gain");
  CHECK(sweep.find(",nan") != std::string::npos);
  CHECK(sweep.find("0.001,") != std::string::npos);
  CHECK(sweep.find(format_double(rows[1].gain)) != std::string::npos);

  ojson jrows = to_json(rows);
  CHECK(jrows.at(0).at("gain").is_null());
  CHECK(jrows.at(1).at("gain").get<double>() == rows[1].gain);
}

TEST_CASE("artifacts are deterministic, newline-terminated, and carry metadata") {
  ojson config;
  config["alpha"] = 2.0;
  config["cutoff"] = 30;
  ojson results;
  results["value"] = std::sqrt(3.0);
  ojson art = run_artifact("demo", config, results);
  CHECK(art.at("command").get<std::string>() == "demo");
  CHECK(art.at("library_version").get<std::string>() == kVersion);
  CHECK(art.at("format_version").get<int>() == kFormatVersion);
  CHECK(art.at("config").at("alpha").get<double>() == 2.0);
  CHECK(art.at("results").at("value").get<double>() == std::sqrt(3.0));

  std::string once = dump_artifact(art);
  std::string twice = dump_artifact(run_artifact("demo", config, results));
  CHECK(once == twice);
  CHECK(once.back() == '\n');
  // insertion order is preserved so byte layout is stable
  CHECK(once.find("\"command\"") < once.find("\"library_version\""));
  CHECK(once.find("\"library_version\"") < once.find("\"format_version\""));
  CHECK(once.find("\"format_version\"") < once.find("\"config\""));
  CHECK(once.find("\"config\"") < once.find("\"results\""));
}

TEST_CASE("text files round trip bytes exactly") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bcodex_serialize_test";
  fs::create_directories(dir);
  fs::path file = dir / "artifact.json";
  std::string payload = "line one\nline two\n\ttabbed, trailing newline\n";
  write_text(file.string(), payload);
  CHECK(read_text(file.string()) == payload);
  CHECK_THROWS_AS(read_text((dir / "missing.json").string()), ValidationError);
  CHECK_THROWS_AS(write_text((dir / "no_such_dir" / "x.json").string(), "x"), ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("condition reports and detectability tables serialize with stable keys") {
  BosonicCode code = binomial_code(2, 1, 16);
  FockOperator ident = identity_op(16);
  FockOperator a = lower_op(16);
  KLReport rep = kl_matrix(code, {ident, a}, {"I", "a"}, 1e-8);
  ojson j = through_text(to_json(rep));
  CHECK(j.at("labels").get<std::vector<std::string>>() == std::vector<std::string>{"I", "a"});
  CHECK(j.at("defect").get<double>() == rep.defect);
  CHECK(j.at("correctable").get<bool>() == rep.correctable);
  Mat lambda = mat_from_json(j.at("lambda"));
  CHECK((lambda - rep.lambda).cwiseAbs().maxCoeff() == 0.0);

  std::vector<DetectabilityRow> rows = detectability_report(code, "loss_powers", 2);
  ojson arr = through_text(to_json(rows));
  REQUIRE(arr.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(arr.at(i).at("label").get<std::string>() == rows[i].label);
    CHECK(arr.at(i).at("detectable").get<bool>() == rows[i].detectable);
    CHECK(arr.at(i).at("deviation").get<double>() == rows[i].deviation);
  }

  ChebyshevResult res = chebyshev_search(1, {0, 2, 4}, 12, 5);
  ojson cj = through_text(to_json(res));
  CHECK(cj.at("objective").get<double>() == res.objective);
  CHECK(cj.at("seed").get<std::uint64_t>() == res.seed);
  CHECK(cj.at("code").at("family").get<std::string>() == "chebyshev");

  CodeFootprint fp = code_footprint(code, {ident, a});
  ojson fj = through_text(to_json(fp));
  CHECK(fj.at("support_count").get<int>() == fp.support_count);
  CHECK(fj.at("error_space_count").get<int>() == fp.error_space_count);
  CHECK(fj.at("mutually_orthogonal").get<bool>() == fp.mutually_orthogonal);
  CHECK(fj.at("modes").get<int>() == fp.modes);
}
