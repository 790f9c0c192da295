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

#ifndef BCODEX_SERIALIZE_HPP
#define BCODEX_SERIALIZE_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "bcodex/channels.hpp"
#include "bcodex/codes.hpp"
#include "bcodex/fock.hpp"
#include "bcodex/kl.hpp"
#include "bcodex/recovery.hpp"
#include "bcodex/shift.hpp"

namespace bcodex {

// All emitters use insertion-ordered JSON and shortest round-trip doubles, so
// a fixed input produces byte-identical output. NaN serializes as JSON null
// and comes back as NaN. Nothing time-dependent goes into files.
using ojson = nlohmann::ordered_json;

std::string format_double(double x);  // %.17g; "nan"/"inf" spelled out

ojson to_json(const Mat& m);
Mat mat_from_json(const ojson& j);
ojson to_json(const RealMat& m);
RealMat real_mat_from_json(const ojson& j);

ojson to_json(const FockVector& v);
FockVector fock_vector_from_json(const ojson& j);
ojson to_json(const FockOperator& op);
FockOperator fock_operator_from_json(const ojson& j);

ojson to_json(const BosonicCode& code);
BosonicCode code_from_json(const ojson& j);

ojson to_json(const KLReport& rep);
ojson to_json(const std::vector<DetectabilityRow>& rows);

/// Channel certificate; Kraus matrices included only on request.
ojson to_json(const KrausChannel& ch, bool include_kraus = false);

ojson to_json(const cv::ShiftMcResult& r);
cv::ShiftMcResult shift_mc_from_json(const ojson& j);
std::string mc_csv(const cv::ShiftMcResult& r);

ojson to_json(const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

ojson to_json(const ChebyshevResult& res);
ojson to_json(const CodeFootprint& fp);

/// Wraps results with the reproducibility metadata block: the fully resolved
/// config echo, library version, and format version.
ojson run_artifact(const std::string& command, const ojson& config_echo, ojson results);

/// Serializes with a trailing newline, LF endings.
std::string dump_artifact(const ojson& artifact);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace bcodex

#endif  // BCODEX_SERIALIZE_HPP
