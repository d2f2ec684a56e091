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

// Extendibility of bipartite product sets. A product vector a (x) b is
// orthogonal to every member iff the members split into set_a (killed by a on
// Alice's side) and set_b (killed by b on Bob's side), which is possible iff
// rank of set_a's A-factors < d_A and rank of set_b's B-factors < d_B.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locc/detect.hpp"
#include "locc/ensembles.hpp"

namespace locc {

enum class Side { A, B };

struct PartitionWitness {
  std::vector<std::size_t> set_a;
  std::vector<std::size_t> set_b;
  std::vector<std::string> set_a_labels;
  std::vector<std::string> set_b_labels;
  int r_a = 0;  // rank of the A-factors of set_a
  int r_b = 0;  // rank of the B-factors of set_b
  std::optional<StateVector> extension_state;
};

struct ExtendibilityResult {
  bool extendible = false;
  std::optional<PartitionWitness> witness;
  std::uint64_t partitions_examined = 0;
};

/// Scans all 2^N partitions in increasing mask order (bit i set: member i in
/// set_a) and stops at the first one with both ranks deficient.
ExtendibilityResult find_orthogonal_product_state(const Ensemble& e,
                                                  const ToleranceConfig& tol = {});

/// Subsets whose `side` factors have rank <= rank_bound, annotated with the
/// other-side rank of the complementary set. Sizes ascend when subset_size is
/// absent; combinations are lexicographic within a size.
std::vector<PartitionWitness> enumerate_low_rank_partitions(
    const Ensemble& e, Side side, int rank_bound, std::optional<int> subset_size = std::nullopt,
    const ToleranceConfig& tol = {});

struct SubsetReport {
  std::string removed_label;
  bool decided = false;
  bool extendible = false;
  std::string method;
  std::optional<PartitionWitness> witness;
  std::optional<StateVector> complement_vector;
};

struct UBClassification {
  bool decidable = true;
  std::string reason;  // set when not decidable
  std::string method;  // partition, full_span or complement_schmidt
  bool is_ub = false;
  bool is_gub = false;
  bool is_upb = false;
  bool is_gupb = false;
  bool spans_full_space = false;
  int complement_dim = 0;
  std::optional<PartitionWitness> extension;  // when extendible
  std::vector<SubsetReport> maximal_subset_reports;
};

/// Throws for linearly dependent input.
UBClassification classify_unextendible_basis(const Ensemble& e, const ToleranceConfig& tol = {});

struct LemmaCrosscheck {
  bool checked = false;
  std::string skip_reason;
  bool is_ub = false;
  bool is_gub = false;
  Overall clsd = Overall::undetermined;
  std::string clsd_method;
  bool consistent = false;
};

LemmaCrosscheck crosscheck_lemma_gub(const Ensemble& e, const DetectConfig& cfg = {});

}  // namespace locc
