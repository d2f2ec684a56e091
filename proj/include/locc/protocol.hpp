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

// Finite local-measurement protocols. Classical communication is modeled by
// branching: the child of an outcome may be a measurement by any party.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "locc/detect.hpp"
#include "locc/ensembles.hpp"
#include "locc/marking.hpp"

namespace locc {

struct Povm {
  std::vector<int> subsystem;  // tensor factor indices, increasing
  Dims local_dims;             // dims of those factors
  std::vector<std::pair<std::string, Matrix>> effects;
};

struct PovmReport {
  double completeness_residual = 0.0;  // max entry of |sum E - I|
  double min_eigenvalue = 0.0;         // smallest over all effects
  bool pass = false;
};

PovmReport verify_povm(const Povm& p, const ToleranceConfig& tol = {});

struct ConclusiveEntry {
  std::string effect;
  std::string member;
  double probability = 0.0;         // Tr(rho_member E)
  double max_offdiagonal = 0.0;     // max over other members of Tr(rho E)
};

struct ConclusiveReport {
  std::vector<ConclusiveEntry> entries;
  bool pass = false;
};

/// Checks Tr(rho_l E_k) = p_k delta_{lk} with p_k > 0 for a POVM on the full
/// space. answer_map sends effect labels to member labels; effects absent from
/// the map are inconclusive.
ConclusiveReport verify_conclusive_condition(const Povm& p, const Ensemble& e,
                                             const std::map<std::string, std::string>& answer_map);

struct Declaration {
  std::optional<std::string> answer;  // empty: inconclusive
};

struct ProtocolNode;
using Branch = std::variant<std::shared_ptr<const ProtocolNode>, Declaration>;

struct ProtocolNode {
  int acting_party = 0;
  Povm povm;
  std::vector<Branch> branches;  // one per effect, same order
};

using ProtocolPtr = std::shared_ptr<const ProtocolNode>;

struct Hypothesis {
  std::string label;
  std::variant<StateVector, Operator> state;
};

struct HypothesisSet {
  PartyStructure structure;
  std::vector<Hypothesis> hypotheses;

  static HypothesisSet from_ensemble(const Ensemble& e);
  static HypothesisSet from_marking(const DerivedMarkingSet& d);
};

/// Ordered pairs (tuples) of distinct, possibly mixed, members as regrouped
/// tensor products over the marking structure.
HypothesisSet mixed_marking_hypotheses(const Ensemble& e, int m);

struct HypothesisOutcome {
  std::string label;
  std::map<std::string, double> distribution;  // declaration -> probability
  double success = 0.0;
  double error = 0.0;
  double inconclusive = 0.0;
  double total = 0.0;
};

struct SimulationReport {
  std::vector<HypothesisOutcome> per_hypothesis;
  double max_error = 0.0;
  double max_conservation_defect = 0.0;
  bool zero_error = false;
};

inline constexpr const char* kInconclusive = "inconclusive";

/// Exact propagation of every hypothesis through the tree with the Lueders
/// update sqrt(E). Throws for malformed trees, including nodes whose
/// subsystem is not owned by the acting party.
SimulationReport simulate(const ProtocolNode& root, const HypothesisSet& hypotheses,
                          const ToleranceConfig& tol = {});

/// Slot-by-slot one-way protocol built from detecting certificates of the
/// base members.
ProtocolPtr build_sequential_marking_protocol(
    const DerivedMarkingSet& d, const std::map<std::string, DetectingCertificate>& base);

enum class YuMode { strict01, any_anticorrelated };

/// Detector for w_k w_k: party A projects on w_{k+1}^perp, party B on
/// w_{k+2}^perp.
ProtocolPtr pw_conclusive(int k);
/// The same detector written as a four-outcome product-basis POVM on the full
/// space; effect "E0" answers w_k w_k.
Povm pw_conclusive_povm(int k);

/// Computational-basis rounds on the first slot, then on the second.
ProtocolPtr yu_marking(int d, YuMode mode);
/// Local tests on the factors of the tiles member t1, slot by slot.
ProtocolPtr upb_marking();

std::vector<std::string> named_protocol_names();

nlohmann::json protocol_to_json(const ProtocolNode& root);
nlohmann::json simulation_to_json(const SimulationReport& r);

const char* to_string(YuMode m);
YuMode yu_mode_from_string(std::string_view s);

}  // namespace locc
