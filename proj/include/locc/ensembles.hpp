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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "locc/numkernel.hpp"

namespace locc {

/// Assignment of tensor factors to spatially separated parties.
///
/// A party may own several factors, and they need not be contiguous; e.g. the
/// four-qubit Smolin ordering (A1, B1, A2, B2) has factor_assignment
/// {0, 1, 0, 1}. A party's local space is the tensor product of its factors
/// taken in increasing factor order.
struct PartyStructure {
  Dims factor_dims;
  std::vector<int> factor_assignment;

  static PartyStructure single(int dim);
  static PartyStructure bipartite(int dim_a, int dim_b);

  int num_parties() const;
  int num_factors() const { return static_cast<int>(factor_dims.size()); }
  std::size_t total_dim() const { return locc::total_dim(factor_dims); }
  std::vector<int> factors_of(int party) const;
  Dims local_dims(int party) const;
  int party_dim(int party) const;
  Dims party_dims() const;

  /// Factor permutation that lists party 0's factors first, then party 1's,
  /// and so on (feed to regroup_factors to reach the party-major layout).
  std::vector<int> party_major_permutation() const;

  void validate() const;
  bool operator==(const PartyStructure&) const = default;
};

/// Tensor of one local vector per party, returned in the structure's factor
/// order.
StateVector assemble_product(const PartyStructure& structure,
                             std::span<const StateVector> per_party);

/// Per-party factors of `s` when it is a product across all parties.
std::optional<std::vector<StateVector>> factorize_across_parties(
    const StateVector& s, const PartyStructure& structure,
    const ToleranceConfig& tol = {});

/// True when `s` is a product across every party.
bool is_fully_product(const StateVector& s, const PartyStructure& structure,
                      const ToleranceConfig& tol = {});

struct EnsembleMember {
  std::string label;
  std::variant<StateVector, Operator> body;
  /// Present exactly when the member is a product across parties.
  std::optional<std::vector<StateVector>> product_factors;

  bool is_pure() const { return std::holds_alternative<StateVector>(body); }
  const StateVector& state() const;
  Operator density() const;
};

struct DerivedFrom {
  std::string base;
  int m = 1;
};

struct Ensemble {
  std::string name;
  PartyStructure structure;
  std::vector<EnsembleMember> members;
  std::optional<DerivedFrom> derived_from;

  std::size_t size() const { return members.size(); }
  /// Index of the member with this label; throws if absent.
  std::size_t index_of(std::string_view label) const;
  bool all_pure() const;
  /// Every member pure and carrying product factors.
  bool all_product() const;
  std::vector<StateVector> states() const;
};

/// Fills in missing product_factors for pure members that factorize.
Ensemble with_inferred_factors(Ensemble e, const ToleranceConfig& tol = {});

/// Copy of `e` restricted to the given member indices, in that order.
Ensemble subset(const Ensemble& e, std::span<const std::size_t> indices,
                std::string name = {});

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string label;  // member label, or empty for ensemble-level problems
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Ensemble& e, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Named ensembles

/// Names accepted by build_named.
std::span<const std::string_view> named_ensemble_names();

/// Builds a named ensemble. `param` is the local dimension d for "yu" (default
/// 2) and ignored elsewhere.
Ensemble build_named(std::string_view name, std::optional<int> param = std::nullopt);

/// The Bell state B^i (i = 1..4: Phi+, Phi-, Psi+, Psi-) on two qubits.
StateVector bell_state(int i);

/// Terms of a pairing decomposition sum_k weight * B^left (x) B^right.
struct SmolinTerm {
  int left = 1;
  int right = 1;
  double weight = 0.25;
};

/// Max-entry difference between sum_k w B^l_{A1B1} (x) B^r_{A2B2} and
/// sum_k w B^l_{A1A2} (x) B^r_{B1B2}, both expressed in the (A1,B1,A2,B2)
/// factor order.
double smolin_decomposition_residual(std::span<const SmolinTerm> a1b1_terms,
                                     std::span<const SmolinTerm> a1a2_terms);

/// Residual of the Smolin-state pairing identity; ~1e-16 in exact form.
double smolin_identity_residual();

/// The Smolin state on (A1, B1, A2, B2).
Operator smolin_state();

// ---------------------------------------------------------------------------
// JSON

nlohmann::json ensemble_to_json(const Ensemble& e);
/// Throws Error(invalid_input) with a JSON-pointer-addressed message.
Ensemble ensemble_from_json(const nlohmann::json& doc, const ToleranceConfig& tol = {});

Ensemble parse_ensemble(std::string_view document, const ToleranceConfig& tol = {});
std::string serialize_ensemble(const Ensemble& e);

nlohmann::json state_to_json(const StateVector& s);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace locc
