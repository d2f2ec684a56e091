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

// Regression registry of the reproduced results. Each claim recomputes its
// observation from the library primitives.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "locc/detect.hpp"

namespace locc {

enum class ClaimStatus { pass, fail, heuristic_pass };
const char* to_string(ClaimStatus s);

struct ClaimRecord {
  std::string id;
  std::string title;
  nlohmann::json expected;
  nlohmann::json observed;
  ClaimStatus status = ClaimStatus::fail;
};

/// Registry order.
const std::vector<std::string>& claim_ids();

ClaimRecord run_claim(std::string_view id, const DetectConfig& cfg = {});

/// Runs the claims concurrently; results come back in the order of `ids`.
/// "all" expands to the registry. Unknown ids throw Error(invalid_input).
std::vector<ClaimRecord> run_claims(const std::vector<std::string>& ids,
                                    const DetectConfig& cfg = {});

nlohmann::json claim_to_json(const ClaimRecord& r);

/// Report with "all_pass" (true iff no claim has status fail).
nlohmann::json cmd_reproduce(const std::vector<std::string>& ids, const DetectConfig& cfg = {});

}  // namespace locc
