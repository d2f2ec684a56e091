// Copyright 2026 The locc-marker Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Report-producing commands shared by the C API and the command-line tool.
// Every report is a JSON object carrying "schema_version": 1.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "locc/detect.hpp"
#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"
#include "locc/upb.hpp"

namespace locc {

inline constexpr int kSchemaVersion = 1;

nlohmann::json report_header(const std::string& command);
nlohmann::json ensemble_summary(const Ensemble& e);
nlohmann::json certificate_to_json(const DetectingCertificate& c);
nlohmann::json infeasibility_to_json(const ExactInfeasibilityReport& r);
nlohmann::json heuristic_to_json(const HeuristicSearchReport& r);
nlohmann::json verdict_to_json(const CLSDVerdict& v);
nlohmann::json witness_to_json(const PartitionWitness& w);
nlohmann::json classification_to_json(const UBClassification& c);

nlohmann::json cmd_ensembles();
nlohmann::json cmd_analyze(const Ensemble& e, std::optional<int> m, const DetectConfig& cfg);
/// Throws Error(undecidable) outside the exactly decided fragment.
nlohmann::json cmd_classify(const Ensemble& e, const DetectConfig& cfg);

enum class DetectMethod { automatic, exact, heuristic };
DetectMethod detect_method_from_string(std::string_view s);

/// Detection for one target or every member; with m, on the m-fold marking set.
nlohmann::json cmd_detect(const Ensemble& e, std::optional<std::string> target,
                          std::optional<int> m, DetectMethod method, const DetectConfig& cfg);

struct MarkOptions {
  int m = 2;
  YuMode mode = YuMode::any_anticorrelated;
  bool include_tree = false;
};

/// Builds and simulates a marking protocol. Throws Error(no_protocol) when
/// none can be constructed.
nlohmann::json cmd_mark(const Ensemble& e, const MarkOptions& opts, const DetectConfig& cfg);

}  // namespace locc
