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

// bcodex command-line front end. Artifacts are deterministic: a fixed
// command line produces byte-identical files. Timing goes to stderr only.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcodex/channels.hpp"
#include "bcodex/codes.hpp"
#include "bcodex/fock.hpp"
#include "bcodex/kl.hpp"
#include "bcodex/recovery.hpp"
#include "bcodex/serialize.hpp"
#include "bcodex/shift.hpp"
#include "bcodex/version.hpp"

namespace {

using bcodex::ojson;
using bcodex::ValidationError;

int env_threads() {
  const char* e = std::getenv("BCODEX_THREADS");
  if (e == nullptr || *e == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(e, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 4096)
    throw ValidationError("BCODEX_THREADS must be a positive integer");
  return static_cast<int>(v);
}

// Applies --config file values on top of parsed flags; unknown keys rejected.
struct ConfigBinder {
  std::map<std::string, std::function<void(const ojson&)>> setters;

  void bind(const std::string& key, double* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<double>(); };
  }
  void bind(const std::string& key, int* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<int>(); };
  }
  void bind(const std::string& key, std::uint64_t* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<std::uint64_t>(); };
  }
  void bind(const std::string& key, bool* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<bool>(); };
  }
  void bind(const std::string& key, std::string* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<std::string>(); };
  }
  void bind(const std::string& key, std::vector<std::string>* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<std::vector<std::string>>(); };
  }
  void bind(const std::string& key, std::vector<double>* t) {
    setters[key] = [t](const ojson& v) { *t = v.get<std::vector<double>>(); };
  }

  void apply(const std::string& path) const {
    ojson cfg;
    try {
      cfg = ojson::parse(bcodex::read_text(path));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      auto it = setters.find(key);
      if (it == setters.end()) throw ValidationError("unknown config key: " + key);
      try {
        it->second(value);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad config value for " + key + ": " + e.what());
      }
    }
  }
};

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
      throw ValidationError("bad --param (expected KEY=VALUE): " + kv);
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    try {
      size_t used = 0;
      double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      out[key] = v;
    } catch (const std::exception&) {
      throw ValidationError("bad numeric value in --param: " + kv);
    }
  }
  return out;
}

int param_int(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ValidationError("missing code parameter: " + key);
  double v = it->second;
  long long n = std::llround(v);
  if (std::abs(v - static_cast<double>(n)) > 1e-12)
    throw ValidationError("code parameter must be an integer: " + key);
  return static_cast<int>(n);
}

double param_double(const std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ValidationError("missing code parameter: " + key);
  return it->second;
}

void check_param_keys(const std::map<std::string, double>& params,
                      const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const std::string& a : allowed) ok = ok || (a == k);
    if (!ok) throw ValidationError("unknown code parameter: " + k);
  }
}

bcodex::BosonicCode make_code(const std::string& family,
                              const std::map<std::string, double>& params, int cutoff,
                              const std::string& variant) {
  using namespace bcodex;
  if (family == "trivial") {
    check_param_keys(params, {});
    return trivial_code(cutoff);
  }
  if (family == "binomial") {
    check_param_keys(params, {"N", "D"});
    return binomial_code(param_int(params, "N"), param_int(params, "D"), cutoff);
  }
  if (family == "cat") {
    check_param_keys(params, {"N", "alpha"});
    return cat_code(param_int(params, "N"), param_double(params, "alpha"), cutoff);
  }
  if (family == "number-phase") {
    check_param_keys(params, {"N"});
    return number_phase_code(param_int(params, "N"), cutoff);
  }
  if (family == "gkp") {
    check_param_keys(params, {"delta"});
    GkpVariant v;
    if (variant == "canonical") {
      v = GkpVariant::canonical_state;
    } else if (variant == "square") {
      v = GkpVariant::square_qubit;
    } else {
      throw ValidationError("gkp --variant must be canonical or square");
    }
    return gkp_approx_code(param_double(params, "delta"), cutoff, v);
  }
  if (family == "dual-rail") {
    check_param_keys(params, {});
    return dual_rail_code();
  }
  if (family == "cly2") {
    check_param_keys(params, {});
    return cly_code(ClyVariant::two_mode);
  }
  if (family == "cly3") {
    check_param_keys(params, {});
    return cly_code(ClyVariant::three_mode);
  }
  throw ValidationError("unknown code family: " + family);
}

bcodex::FockOperator op_power(const bcodex::FockOperator& base, int k, int cutoff) {
  bcodex::FockOperator out = bcodex::identity_op(cutoff);
  for (int i = 0; i < k; ++i) out.m = base.m * out.m;
  return out;
}

// Error-set grammar: "loss:K", "gain:K", "dephasing:K", "phasor:K"; powers
// 1..K of the base operator on every mode, plus the identity once.
void parse_errors(const std::vector<std::string>& specs, const std::vector<int>& cutoffs,
                  std::vector<bcodex::FockOperator>& ops, std::vector<std::string>& labels) {
  using namespace bcodex;
  ops.clear();
  labels.clear();
  FockOperator ident = identity_op(cutoffs[0]);
  for (size_t m = 1; m < cutoffs.size(); ++m) ident = tensor(ident, identity_op(cutoffs[m]));
  ops.push_back(ident);
  labels.push_back("I");
  for (const std::string& spec : specs) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
      throw ValidationError("bad --errors (expected FAMILY:ORDER): " + spec);
    std::string fam = spec.substr(0, colon);
    int order = 0;
    try {
      order = std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("bad error order in: " + spec);
    }
    if (order < 1 || order > 16) throw ValidationError("error order must be in 1..16: " + spec);
    for (size_t mode = 0; mode < cutoffs.size(); ++mode) {
      int cutoff = cutoffs[mode];
      for (int k = 1; k <= order; ++k) {
        FockOperator op;
        std::string label;
        if (fam == "loss") {
          op = op_power(lower_op(cutoff), k, cutoff);
          label = "a^" + std::to_string(k);
        } else if (fam == "gain") {
          op = op_power(raise_op(cutoff), k, cutoff);
          label = "adag^" + std::to_string(k);
        } else if (fam == "dephasing") {
          op = op_power(number_op(cutoff), k, cutoff);
          label = "n^" + std::to_string(k);
        } else if (fam == "phasor") {
          op = phasor_op(k, cutoff);
          label = "shift^" + std::to_string(k);
        } else {
          throw ValidationError("unknown error family: " + fam);
        }
        if (cutoffs.size() > 1) label += "@mode" + std::to_string(mode);
        ops.push_back(embed(op, cutoffs, static_cast<int>(mode)));
        labels.push_back(label);
        if (fam == "phasor") {
          FockOperator down = phasor_op(-k, cutoff);
          std::string dl = "shift^-" + std::to_string(k);
          if (cutoffs.size() > 1) dl += "@mode" + std::to_string(mode);
          ops.push_back(embed(down, cutoffs, static_cast<int>(mode)));
          labels.push_back(dl);
        }
      }
    }
  }
}

std::string csv_with_metadata(const std::string& command, const ojson& config,
                              const std::string& table) {
  std::ostringstream out;
  out << "# command=" << command << "\n";
  out << "# library_version=" << bcodex::kVersion << "\n";
  out << "# format_version=" << bcodex::kFormatVersion << "\n";
  out << "# config=" << config.dump() << "\n";
  out << table;
  return out.str();
}

void emit(const std::string& command, const ojson& config, const std::string& format,
          const ojson& json_results, const std::string& csv_table, const std::string& out_path) {
  std::string payload;
  if (format == "json") {
    payload = bcodex::dump_artifact(bcodex::run_artifact(command, config, json_results));
  } else if (format == "csv") {
    if (csv_table.empty())
      throw ValidationError("csv format is not available for subcommand " + command);
    payload = csv_with_metadata(command, config, csv_table);
  } else {
    throw ValidationError("unknown --format (expected json or csv): " + format);
  }
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    bcodex::write_text(out_path, payload);
    std::cout << "wrote " << out_path << "\n";
  }
}

std::vector<double> resolve_chi_grid(const std::vector<double>& explicit_chi, double chi_min,
                                     double chi_max, int chi_points) {
  if (!explicit_chi.empty()) return explicit_chi;
  if (chi_points < 1) throw ValidationError("--chi-points must be >= 1");
  if (chi_min <= 0 || chi_max < chi_min)
    throw ValidationError("need 0 < --chi-min <= --chi-max for a log grid");
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(chi_points));
  if (chi_points == 1) {
    grid.push_back(chi_min);
    return grid;
  }
  double llo = std::log(chi_min), lhi = std::log(chi_max);
  for (int i = 0; i < chi_points; ++i)
    grid.push_back(std::exp(llo + (lhi - llo) * i / (chi_points - 1)));
  return grid;
}

struct CodeFlags {
  std::string family = "binomial";
  std::vector<std::string> params;
  int cutoff = 20;
  std::string variant = "canonical";

  void add_to(CLI::App* cmd, ConfigBinder& binder, const std::string& family_flag) {
    cmd->add_option(family_flag, family, "code family: trivial, binomial, cat, number-phase, gkp, dual-rail, cly2, cly3");
    cmd->add_option("--param", params, "code parameter KEY=VALUE (repeatable)");
    cmd->add_option("--cutoff", cutoff, "Fock-space cutoff per mode");
    cmd->add_option("--variant", variant, "gkp variant: canonical or square");
    std::string key = family_flag.substr(2);  // "--code" -> "code"
    binder.bind(key, &family);
    binder.bind("param", &params);
    binder.bind("cutoff", &cutoff);
    binder.bind("variant", &variant);
  }

  bcodex::BosonicCode build() const { return make_code(family, parse_params(params), cutoff, variant); }

  ojson echo(const std::string& family_key) const {
    ojson j;
    j[family_key] = family;
    ojson p = ojson::object();
    for (const auto& [k, v] : parse_params(params)) p[k] = v;
    j["params"] = p;
    j["cutoff"] = cutoff;
    j["variant"] = variant;
    return j;
  }
};

}  // namespace

int main(int argc, char** argv) {
  int default_threads = 1;
  try {
    default_threads = env_threads();
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"bcodex: bosonic error-correcting-code workbench"};
  app.require_subcommand(1);

  // ---- code ----
  auto* cmd_code = app.add_subcommand("code", "construct a code and emit its codewords");
  CodeFlags code_flags;
  ConfigBinder code_binder;
  std::string code_out, code_config, code_format = "json";
  code_flags.add_to(cmd_code, code_binder, "--family");
  cmd_code->add_option("--out", code_out, "output path (stdout when absent)");
  cmd_code->add_option("--config", code_config, "JSON config file; overrides flags");
  cmd_code->add_option("--format", code_format, "json");
  code_binder.bind("format", &code_format);

  // ---- kl ----
  auto* cmd_kl = app.add_subcommand("kl", "error-correction condition report");
  CodeFlags kl_flags;
  ConfigBinder kl_binder;
  std::vector<std::string> kl_errors{"loss:1"};
  double kl_tol = 1e-8;
  std::string kl_out, kl_config, kl_format = "json";
  kl_flags.add_to(cmd_kl, kl_binder, "--code");
  cmd_kl->add_option("--errors", kl_errors, "error set spec FAMILY:ORDER (repeatable)");
  cmd_kl->add_option("--tol", kl_tol, "correctability tolerance");
  cmd_kl->add_option("--out", kl_out, "output path (stdout when absent)");
  cmd_kl->add_option("--config", kl_config, "JSON config file; overrides flags");
  cmd_kl->add_option("--format", kl_format, "json");
  kl_binder.bind("errors", &kl_errors);
  kl_binder.bind("tol", &kl_tol);
  kl_binder.bind("format", &kl_format);

  // ---- sweep ----
  auto* cmd_sweep = app.add_subcommand("sweep", "logical-vs-physical infidelity sweep");
  CodeFlags sweep_flags;
  ConfigBinder sweep_binder;
  std::string sweep_channel = "loss";
  std::vector<double> sweep_chi;
  double sweep_chi_min = 1e-3, sweep_chi_max = 1e-2;
  int sweep_chi_points = 5;
  std::vector<std::string> sweep_errors{"loss:1"};
  std::string sweep_out, sweep_config, sweep_format = "csv";
  sweep_flags.add_to(cmd_sweep, sweep_binder, "--code");
  cmd_sweep->add_option("--channel", sweep_channel, "noise channel: loss or dephasing");
  cmd_sweep->add_option("--chi", sweep_chi, "explicit strength grid (repeatable)");
  cmd_sweep->add_option("--chi-min", sweep_chi_min, "log-grid lower end");
  cmd_sweep->add_option("--chi-max", sweep_chi_max, "log-grid upper end");
  cmd_sweep->add_option("--chi-points", sweep_chi_points, "log-grid point count");
  cmd_sweep->add_option("--errors", sweep_errors, "recovery error set (repeatable)");
  cmd_sweep->add_option("--out", sweep_out, "output path (stdout when absent)");
  cmd_sweep->add_option("--config", sweep_config, "JSON config file; overrides flags");
  cmd_sweep->add_option("--format", sweep_format, "csv or json");
  sweep_binder.bind("channel", &sweep_channel);
  sweep_binder.bind("chi", &sweep_chi);
  sweep_binder.bind("chi_min", &sweep_chi_min);
  sweep_binder.bind("chi_max", &sweep_chi_max);
  sweep_binder.bind("chi_points", &sweep_chi_points);
  sweep_binder.bind("errors", &sweep_errors);
  sweep_binder.bind("format", &sweep_format);

  // ---- channel ----
  auto* cmd_channel = app.add_subcommand("channel", "build a noise channel and certify it");
  ConfigBinder channel_binder;
  std::string channel_kind = "loss";
  double channel_strength = 0.1;
  int channel_cutoff = 20, channel_ell_max = -1, channel_nodes = 7;
  bool channel_full = false;
  std::string channel_out, channel_config, channel_format = "json";
  cmd_channel->add_option("--kind", channel_kind, "loss, dephasing, amplification, displacement");
  cmd_channel->add_option("--strength", channel_strength, "chi (or sigma for displacement)");
  cmd_channel->add_option("--cutoff", channel_cutoff, "Fock-space cutoff");
  cmd_channel->add_option("--ell-max", channel_ell_max, "Kraus order cap (-1 = automatic)");
  cmd_channel->add_option("--nodes", channel_nodes, "quadrature nodes (displacement only)");
  cmd_channel->add_flag("--full", channel_full, "include Kraus matrices in the artifact");
  cmd_channel->add_option("--out", channel_out, "output path (stdout when absent)");
  cmd_channel->add_option("--config", channel_config, "JSON config file; overrides flags");
  cmd_channel->add_option("--format", channel_format, "json");
  channel_binder.bind("kind", &channel_kind);
  channel_binder.bind("strength", &channel_strength);
  channel_binder.bind("cutoff", &channel_cutoff);
  channel_binder.bind("ell_max", &channel_ell_max);
  channel_binder.bind("nodes", &channel_nodes);
  channel_binder.bind("full", &channel_full);
  channel_binder.bind("format", &channel_format);

  // ---- gkp-rep ----
  auto* cmd_rep = app.add_subcommand("gkp-rep", "two-mode shift-correction Monte Carlo");
  ConfigBinder rep_binder;
  double rep_sigma = 0.1;
  std::uint64_t rep_samples = 100000, rep_seed = 1;
  int rep_threads = default_threads;
  std::string rep_out, rep_config, rep_format = "csv";
  cmd_rep->add_option("--sigma", rep_sigma, "shift noise strength");
  cmd_rep->add_option("--samples", rep_samples, "sample count");
  cmd_rep->add_option("--seed", rep_seed, "RNG seed");
  cmd_rep->add_option("--threads", rep_threads, "worker threads (no effect on results)");
  cmd_rep->add_option("--out", rep_out, "output path (stdout when absent)");
  cmd_rep->add_option("--config", rep_config, "JSON config file; overrides flags");
  cmd_rep->add_option("--format", rep_format, "csv or json");
  rep_binder.bind("sigma", &rep_sigma);
  rep_binder.bind("samples", &rep_samples);
  rep_binder.bind("seed", &rep_seed);
  rep_binder.bind("threads", &rep_threads);
  rep_binder.bind("format", &rep_format);

  // ---- gkp-bin ----
  auto* cmd_bin = app.add_subcommand("gkp-bin", "single-mode binning-decoder Monte Carlo");
  ConfigBinder bin_binder;
  double bin_sigma = 0.2;
  std::uint64_t bin_samples = 100000, bin_seed = 1;
  int bin_threads = default_threads;
  std::string bin_out, bin_config, bin_format = "csv";
  cmd_bin->add_option("--sigma", bin_sigma, "shift noise strength");
  cmd_bin->add_option("--samples", bin_samples, "sample count");
  cmd_bin->add_option("--seed", bin_seed, "RNG seed");
  cmd_bin->add_option("--threads", bin_threads, "worker threads (no effect on results)");
  cmd_bin->add_option("--out", bin_out, "output path (stdout when absent)");
  cmd_bin->add_option("--config", bin_config, "JSON config file; overrides flags");
  cmd_bin->add_option("--format", bin_format, "csv or json");
  bin_binder.bind("sigma", &bin_sigma);
  bin_binder.bind("samples", &bin_samples);
  bin_binder.bind("seed", &bin_seed);
  bin_binder.bind("threads", &bin_threads);
  bin_binder.bind("format", &bin_format);

  // ---- nullifier ----
  auto* cmd_null = app.add_subcommand("nullifier", "four-mode analog stabilizer report");
  ConfigBinder null_binder;
  std::vector<double> null_q{1.0};
  std::string null_direction;
  std::string null_out, null_config, null_format = "json";
  cmd_null->add_option("--q", null_q, "transversal displacement strengths (repeatable)");
  cmd_null->add_option("--direction", null_direction,
                       "comma-separated 8-entry quadrature direction to classify");
  cmd_null->add_option("--out", null_out, "output path (stdout when absent)");
  cmd_null->add_option("--config", null_config, "JSON config file; overrides flags");
  cmd_null->add_option("--format", null_format, "json");
  null_binder.bind("q", &null_q);
  null_binder.bind("direction", &null_direction);
  null_binder.bind("format", &null_format);

  // ---- chebyshev ----
  auto* cmd_cheb = app.add_subcommand("chebyshev", "moment-matched sparse code search");
  ConfigBinder cheb_binder;
  int cheb_distance = 1, cheb_cutoff = 20;
  std::string cheb_support = "0,2,4";
  std::uint64_t cheb_seed = 1;
  std::string cheb_out, cheb_config, cheb_format = "json";
  cmd_cheb->add_option("--distance", cheb_distance, "matched moment order D");
  cmd_cheb->add_option("--support", cheb_support, "comma-separated Fock levels");
  cmd_cheb->add_option("--cutoff", cheb_cutoff, "Fock-space cutoff");
  cmd_cheb->add_option("--seed", cheb_seed, "search RNG seed");
  cmd_cheb->add_option("--out", cheb_out, "output path (stdout when absent)");
  cmd_cheb->add_option("--config", cheb_config, "JSON config file; overrides flags");
  cmd_cheb->add_option("--format", cheb_format, "json");
  cheb_binder.bind("distance", &cheb_distance);
  cheb_binder.bind("support", &cheb_support);
  cheb_binder.bind("cutoff", &cheb_cutoff);
  cheb_binder.bind("seed", &cheb_seed);
  cheb_binder.bind("format", &cheb_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  try {
    if (cmd_code->parsed()) {
      if (!code_config.empty()) code_binder.apply(code_config);
      bcodex::BosonicCode code = code_flags.build();
      ojson config = code_flags.echo("family");
      config["format"] = code_format;
      emit("code", config, code_format, bcodex::to_json(code), "", code_out);
    } else if (cmd_kl->parsed()) {
      if (!kl_config.empty()) kl_binder.apply(kl_config);
      bcodex::BosonicCode code = kl_flags.build();
      std::vector<bcodex::FockOperator> ops;
      std::vector<std::string> labels;
      parse_errors(kl_errors, code.cutoffs, ops, labels);
      bcodex::KLReport rep = bcodex::kl_matrix(code, ops, labels, kl_tol);
      ojson config = kl_flags.echo("code");
      config["errors"] = kl_errors;
      config["tol"] = kl_tol;
      config["format"] = kl_format;
      emit("kl", config, kl_format, bcodex::to_json(rep), "", kl_out);
    } else if (cmd_sweep->parsed()) {
      if (!sweep_config.empty()) sweep_binder.apply(sweep_config);
      bcodex::BosonicCode code = sweep_flags.build();
      std::vector<double> grid =
          resolve_chi_grid(sweep_chi, sweep_chi_min, sweep_chi_max, sweep_chi_points);
      std::vector<bcodex::FockOperator> ops;
      std::vector<std::string> labels;
      parse_errors(sweep_errors, code.cutoffs, ops, labels);
      std::vector<bcodex::SweepRow> rows = bcodex::noise_sweep(code, sweep_channel, grid, ops);
      ojson config = sweep_flags.echo("code");
      config["channel"] = sweep_channel;
      config["chi"] = grid;
      config["errors"] = sweep_errors;
      config["format"] = sweep_format;
      emit("sweep", config, sweep_format, bcodex::to_json(rows), bcodex::sweep_csv(rows),
           sweep_out);
    } else if (cmd_channel->parsed()) {
      if (!channel_config.empty()) channel_binder.apply(channel_config);
      bcodex::KrausChannel ch;
      if (channel_kind == "loss") {
        ch = bcodex::loss_channel(channel_strength, channel_cutoff, channel_ell_max);
      } else if (channel_kind == "dephasing") {
        ch = bcodex::dephasing_channel(channel_strength, channel_cutoff, channel_ell_max);
      } else if (channel_kind == "amplification") {
        ch = bcodex::amplification_channel(channel_strength, channel_cutoff, channel_ell_max);
      } else if (channel_kind == "displacement") {
        ch = bcodex::displacement_noise_channel(channel_strength, channel_cutoff, channel_nodes);
      } else {
        throw ValidationError("unknown channel kind: " + channel_kind);
      }
      ojson config;
      config["kind"] = channel_kind;
      config["strength"] = channel_strength;
      config["cutoff"] = channel_cutoff;
      config["ell_max"] = channel_ell_max;
      config["nodes"] = channel_nodes;
      config["full"] = channel_full;
      config["format"] = channel_format;
      emit("channel", config, channel_format, bcodex::to_json(ch, channel_full), "",
           channel_out);
    } else if (cmd_rep->parsed()) {
      if (!rep_config.empty()) rep_binder.apply(rep_config);
      bcodex::cv::ShiftMcResult r =
          bcodex::cv::gkp_repetition_mc(rep_sigma, rep_samples, rep_seed, rep_threads);
      ojson config;
      config["sigma"] = rep_sigma;
      config["samples"] = rep_samples;
      config["seed"] = rep_seed;
      config["format"] = rep_format;
      emit("gkp-rep", config, rep_format, bcodex::to_json(r), bcodex::mc_csv(r), rep_out);
    } else if (cmd_bin->parsed()) {
      if (!bin_config.empty()) bin_binder.apply(bin_config);
      bcodex::cv::ShiftMcResult r =
          bcodex::cv::gkp_bin_mc(bin_sigma, bin_samples, bin_seed, bin_threads);
      ojson config;
      config["sigma"] = bin_sigma;
      config["samples"] = bin_samples;
      config["seed"] = bin_seed;
      config["format"] = bin_format;
      emit("gkp-bin", config, bin_format, bcodex::to_json(r), bcodex::mc_csv(r), bin_out);
    } else if (cmd_null->parsed()) {
      if (!null_config.empty()) null_binder.apply(null_config);
      bcodex::cv::NullifierSet ns = bcodex::cv::four_mode_nullifiers();
      ojson results;
      results["rows"] = bcodex::to_json(ns.rows);
      results["logicals"] = bcodex::to_json(ns.logicals);
      bcodex::RealMat comm(ns.rows.rows(), ns.rows.rows());
      for (int i = 0; i < ns.rows.rows(); ++i)
        for (int j = 0; j < ns.rows.rows(); ++j)
          comm(i, j) = bcodex::cv::symplectic_form(bcodex::RealVec(ns.rows.row(i)),
                                                   bcodex::RealVec(ns.rows.row(j)));
      results["pairwise_commutation"] = bcodex::to_json(comm);
      results["distance"] = bcodex::cv::code_distance(ns);
      ojson trans = ojson::array();
      for (double q : null_q) {
        bcodex::RealVec dir = bcodex::cv::transversal_logical_direction(q);
        bcodex::RealVec syn = bcodex::cv::syndrome(ns, dir);
        ojson t;
        t["q"] = q;
        t["max_syndrome"] = syn.cwiseAbs().maxCoeff();
        t["logical_x_action"] =
            bcodex::cv::symplectic_form(bcodex::RealVec(ns.logicals.row(0)), dir);
        t["undetected_logical"] = !bcodex::cv::displacement_detectable(ns, dir) &&
                                  std::abs(t["logical_x_action"].get<double>()) > 1e-12;
        trans.push_back(t);
      }
      results["transversal"] = trans;
      if (!null_direction.empty()) {
        std::vector<double> entries;
        std::stringstream ss(null_direction);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            entries.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw ValidationError("bad --direction entry: " + item);
          }
        }
        if (entries.size() != 8)
          throw ValidationError("--direction needs exactly 8 comma-separated entries");
        bcodex::RealVec dir(8);
        for (int i = 0; i < 8; ++i) dir(i) = entries[static_cast<size_t>(i)];
        bcodex::RealVec syn = bcodex::cv::syndrome(ns, dir);
        ojson d;
        std::vector<double> syn_vals(syn.data(), syn.data() + syn.size());
        d["syndrome"] = syn_vals;
        d["detectable"] = bcodex::cv::displacement_detectable(ns, dir);
        results["direction"] = d;
      }
      ojson config;
      config["q"] = null_q;
      config["direction"] = null_direction;
      config["format"] = null_format;
      emit("nullifier", config, null_format, results, "", null_out);
    } else if (cmd_cheb->parsed()) {
      if (!cheb_config.empty()) cheb_binder.apply(cheb_config);
      std::vector<int> support;
      std::stringstream ss(cheb_support);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          support.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw ValidationError("bad --support entry: " + item);
        }
      }
      bcodex::ChebyshevResult res =
          bcodex::chebyshev_search(cheb_distance, support, cheb_cutoff, cheb_seed);
      ojson config;
      config["distance"] = cheb_distance;
      config["support"] = support;
      config["cutoff"] = cheb_cutoff;
      config["seed"] = cheb_seed;
      config["format"] = cheb_format;
      emit("chebyshev", config, cheb_format, bcodex::to_json(res), "", cheb_out);
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const bcodex::ToleranceError& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::fprintf(stderr, "wall_time_s=%.3f\n", elapsed.count());
  return 0;
}
