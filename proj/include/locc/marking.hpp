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

#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "locc/ensembles.hpp"

namespace locc {

/// Ordered selection of distinct member indices, one per slot.
using Tuple = std::vector<int>;

/// The set of m-fold tensor products over ordered selections of distinct
/// members. Within each party the factors are slot-major: slot 1's factors
/// first, then slot 2's, and so on.
struct DerivedMarkingSet {
  Ensemble base;
  int m = 1;
  std::vector<Tuple> tuples;  // lexicographic
  Ensemble derived;           // member k corresponds to tuples[k]

  std::size_t index_of(const Tuple& t) const;
};

/// All ordered selections of m distinct indices out of n, lexicographic.
std::vector<Tuple> ordered_selections(int n, int m);

/// Party structure of the m-fold marking space.
PartyStructure marking_structure(const PartyStructure& base, int m);

/// Factor permutation taking the slot-major tensor (slot 1 (x) ... (x) slot m,
/// each in base factor order) to the marking structure's factor order.
std::vector<int> marking_permutation(const PartyStructure& base, int m);

/// Regrouped tensor product of the tuple's base members.
StateVector tuple_state(const Ensemble& base, const Tuple& t);

std::string tuple_label(const Ensemble& base, const Tuple& t);

DerivedMarkingSet derive_marking_set(const Ensemble& e, int m);

struct IndependenceVerdict {
  bool independent = false;
  int rank = 0;
  int count = 0;
};

IndependenceVerdict check_linear_independence(std::span<const StateVector> states,
                                              const ToleranceConfig& tol = {});

/// Unit-norm coefficient vector alpha with sum_i alpha_i |psi_i> = 0, taken
/// from the right singular vector of the smallest singular value. Empty when
/// the states are independent.
std::optional<std::vector<Complex>> find_linear_dependence(
    std::span<const StateVector> states, const ToleranceConfig& tol = {});

struct DependenceWitness {
  int m = 1;
  std::vector<std::pair<Tuple, Complex>> coefficients;  // lexicographic by tuple
  Tuple anchor;  // (j_2, ..., j_m); empty for m = 1
  double residual_norm = 0.0;
  bool valid = false;
};

/// Antisymmetrizes a base linear relation into a relation among the m-fold
/// marking states.
DependenceWitness build_dependence_witness(const Ensemble& e,
                                           std::span<const Complex> base_coeffs, int m);

struct SlotGrouping {
  std::vector<int> group_index;            // per tuple: its first-slot member
  std::map<int, std::vector<std::size_t>> groups;  // member -> tuple indices
};

SlotGrouping group_by_first_slot(const DerivedMarkingSet& d);

}  // namespace locc
