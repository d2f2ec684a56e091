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

// Product detecting states: a product vector orthogonal to every member but
// the target and not orthogonal to the target.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "locc/marking.hpp"

namespace locc {

struct DetectConfig {
  ToleranceConfig tol;
  std::uint64_t seed = 42;
  int restarts = 1000;
  std::uint64_t branch_cap = std::uint64_t{1} << 20;
};

/// Certificates must clear these bounds.
inline constexpr double kOfftargetBound = 1e-9;
inline constexpr double kTargetFloor = 1e-6;

struct DetectingCertificate {
  std::string target_label;
  std::vector<StateVector> per_party_vectors;  // unit vectors, one per party
  double max_offtarget_overlap = 0.0;
  double target_overlap_modulus = 0.0;
};

/// The full product detector in the structure's factor order.
StateVector detector_state(const PartyStructure& structure, const DetectingCertificate& c);

struct CertificateCheck {
  double max_offtarget_overlap = 0.0;
  double target_overlap_modulus = 0.0;
  bool ok = false;
};

/// Recomputes overlaps from the dense detector and the members' full state
/// vectors (no use of product factors).
CertificateCheck verify_certificate(const Ensemble& e, const DetectingCertificate& c);

enum class BranchFailure { empty_nullspace, target_killed_on_party };

struct BranchRecord {
  std::uint64_t code = 0;  // base-K digits, first constraint most significant
  BranchFailure failure = BranchFailure::empty_nullspace;
  int party = 0;
};

struct ExactInfeasibilityReport {
  std::string target_label;
  int num_parties = 0;
  std::vector<std::string> constraint_labels;  // non-target members, digit order
  std::uint64_t branch_count = 0;
  std::vector<BranchRecord> per_branch;
};

/// Party assigned to each constraint by a branch code.
std::vector<int> branch_assignment(std::uint64_t code, int num_parties, int num_constraints);

struct ExactDetectResult {
  std::optional<DetectingCertificate> certificate;
  std::optional<ExactInfeasibilityReport> infeasible;
  std::uint64_t branches_examined = 0;

  bool feasible() const { return certificate.has_value(); }
};

/// Exact decision for ensembles of product states. Every member must carry (or
/// admit) a product factorization. Throws Error(cap_exceeded) when
/// parties^(N-1) exceeds branch_cap.
ExactDetectResult exact_product_detect(const Ensemble& e, std::string_view target,
                                       const DetectConfig& cfg = {});

/// Number of branches exact_product_detect would enumerate.
std::uint64_t exact_branch_count(const Ensemble& e, std::uint64_t cap);

/// Slot-wise tensor products of base detectors; one certificate per tuple,
/// each re-verified against the whole derived set.
std::vector<DetectingCertificate> compositional_detect(
    const DerivedMarkingSet& d, const std::map<std::string, DetectingCertificate>& base);

enum class HeuristicVerdict { found, not_found };

struct HeuristicSearchReport {
  std::string target_label;
  int restarts = 0;
  std::uint64_t seed = 0;
  double best_target_overlap = 0.0;
  double best_offtarget_residual = 0.0;
  double best_ratio = 0.0;
  int best_restart = -1;
  HeuristicVerdict verdict = HeuristicVerdict::not_found;
  std::optional<DetectingCertificate> certificate;
};

/// Seeded alternating search for a product detector on a bipartite ensemble of
/// pure states. not_found is evidence only.
HeuristicSearchReport heuristic_detect(const Ensemble& e, std::string_view target,
                                       int restarts, std::uint64_t seed);

enum class MemberStatus { identifiable, not_identifiable, unknown };
enum class Overall { distinguishable, indistinguishable, undetermined };

struct MemberVerdict {
  std::string label;
  MemberStatus status = MemberStatus::unknown;
  std::optional<DetectingCertificate> certificate;
  std::optional<ExactInfeasibilityReport> infeasible;
  std::optional<HeuristicSearchReport> heuristic;
};

struct CLSDVerdict {
  Overall overall = Overall::undetermined;
  /// How the verdict was reached: linearly_dependent, exact_product,
  /// compositional, heuristic or unsupported.
  std::string method;
  IndependenceVerdict independence;
  std::vector<MemberVerdict> per_state;
};

CLSDVerdict clsd_verdict(const Ensemble& e, const DetectConfig& cfg = {});

/// Verdict over the m-fold marking set of e.
CLSDVerdict clsm_verdict(const Ensemble& e, int m, const DetectConfig& cfg = {});

const char* to_string(MemberStatus s);
const char* to_string(Overall o);
const char* to_string(BranchFailure f);
const char* to_string(HeuristicVerdict v);

}  // namespace locc
