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

#include "locc/marking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "locc/error.hpp"

namespace locc {

namespace {

constexpr double kCoefficientFloor = 1e-9;

void extend(int n, int m, Tuple& prefix, std::vector<bool>& used, std::vector<Tuple>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.push_back(prefix);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    prefix.push_back(i);
    extend(n, m, prefix, used, out);
    prefix.pop_back();
    used[i] = false;
  }
}

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

void require_pure(const Ensemble& e) {
  for (const auto& mem : e.members)
    require(mem.is_pure(), "member '" + mem.label +
                               "' is mixed; marking sets are defined for pure members only");
}

}  // namespace

std::size_t DerivedMarkingSet::index_of(const Tuple& t) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), t);
  require(it != tuples.end() && *it == t, "tuple is not part of the marking set");
  return static_cast<std::size_t>(it - tuples.begin());
}

std::vector<Tuple> ordered_selections(int n, int m) {
  require(m >= 1 && m <= n, "need 1 <= m <= N");
  std::vector<Tuple> out;
  Tuple prefix;
  std::vector<bool> used(n, false);
  extend(n, m, prefix, used, out);
  return out;
}

PartyStructure marking_structure(const PartyStructure& base, int m) {
  PartyStructure s;
  for (int p = 0; p < base.num_parties(); ++p)
    for (int slot = 0; slot < m; ++slot)
      for (int f : base.factors_of(p)) {
        s.factor_dims.push_back(base.factor_dims[f]);
        s.factor_assignment.push_back(p);
      }
  return s;
}

std::vector<int> marking_permutation(const PartyStructure& base, int m) {
  std::vector<int> perm;
  const int nf = base.num_factors();
  for (int p = 0; p < base.num_parties(); ++p)
    for (int slot = 0; slot < m; ++slot)
      for (int f : base.factors_of(p)) perm.push_back(slot * nf + f);
  return perm;
}

StateVector tuple_state(const Ensemble& base, const Tuple& t) {
  std::vector<StateVector> slots;
  for (int i : t) {
    require(i >= 0 && static_cast<std::size_t>(i) < base.size(), "tuple index out of range");
    slots.push_back(base.members[i].state());
  }
  return regroup_factors(tensor_product(slots),
                         marking_permutation(base.structure, static_cast<int>(t.size())));
}

std::string tuple_label(const Ensemble& base, const Tuple& t) {
  std::string out;
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (s) out += ",";
    out += base.members[t[s]].label;
  }
  return out;
}

DerivedMarkingSet derive_marking_set(const Ensemble& e, int m) {
  require(!e.members.empty(), "ensemble has no members");
  require(m >= 1 && m <= static_cast<int>(e.size()),
          "m must lie in 1.." + std::to_string(e.size()));
  require_pure(e);

  DerivedMarkingSet d;
  d.base = e;
  d.m = m;
  d.tuples = ordered_selections(static_cast<int>(e.size()), m);
  d.derived.name = e.name + "[m=" + std::to_string(m) + "]";
  d.derived.structure = marking_structure(e.structure, m);
  d.derived.derived_from = DerivedFrom{e.name, m};
  const int parties = e.structure.num_parties();
  for (const Tuple& t : d.tuples) {
    EnsembleMember mem;
    mem.label = tuple_label(e, t);
    mem.body = tuple_state(e, t);
    const bool product = std::all_of(t.begin(), t.end(), [&](int i) {
      return e.members[i].product_factors.has_value();
    });
    if (product) {
      std::vector<StateVector> factors;
      for (int p = 0; p < parties; ++p) {
        std::vector<StateVector> slot_factors;
        for (int i : t) slot_factors.push_back((*e.members[i].product_factors)[p]);
        factors.push_back(tensor_product(slot_factors));
      }
      mem.product_factors = std::move(factors);
    }
    d.derived.members.push_back(std::move(mem));
  }
  return d;
}

IndependenceVerdict check_linear_independence(std::span<const StateVector> states,
                                              const ToleranceConfig& tol) {
  require(!states.empty(), "independence check needs at least one state");
  IndependenceVerdict v;
  v.count = static_cast<int>(states.size());
  v.rank = numerical_rank(states, tol);
  v.independent = v.rank == v.count;
  return v;
}

std::optional<std::vector<Complex>> find_linear_dependence(std::span<const StateVector> states,
                                                          const ToleranceConfig& tol) {
  if (states.empty()) return std::nullopt;
  const Matrix a = stack_columns(states);
  if (numerical_rank(a, tol.rank_rel_tol) == a.cols()) return std::nullopt;
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector alpha = svd.matrixV().col(a.cols() - 1);
  return std::vector<Complex>(alpha.data(), alpha.data() + alpha.size());
}

DependenceWitness build_dependence_witness(const Ensemble& e,
                                           std::span<const Complex> base_coeffs, int m) {
  require_pure(e);
  const int n = static_cast<int>(e.size());
  require(static_cast<int>(base_coeffs.size()) == n, "need one coefficient per member");
  require(m >= 1 && m <= n, "m must lie in 1.." + std::to_string(n));

  Vector combo = Vector::Zero(static_cast<Eigen::Index>(e.structure.total_dim()));
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    combo += base_coeffs[i] * e.members[i].state().amplitudes();
    scale = std::max(scale, std::abs(base_coeffs[i]));
  }
  require(scale > kCoefficientFloor, "coefficients are all zero");
  require(combo.norm() <= 1e-9 * std::max(1.0, scale),
          "coefficients do not annihilate the ensemble (residual " +
              std::to_string(combo.norm()) + ")");

  DependenceWitness w;
  w.m = m;
  if (m == 1) {
    for (int i = 0; i < n; ++i) w.coefficients.push_back({Tuple{i}, base_coeffs[i]});
    w.residual_norm = combo.norm();
    w.valid = true;
    return w;
  }

  std::optional<Tuple> anchor;
  for (const Tuple& cand : ordered_selections(n, m - 1)) {
    for (int i = 0; i < n && !anchor; ++i)
      if (std::abs(base_coeffs[i]) > kCoefficientFloor &&
          std::find(cand.begin(), cand.end(), i) == cand.end())
        anchor = cand;
    if (anchor) break;
  }
  require(anchor.has_value(), "no anchor tuple leaves a nonzero coefficient outside it");
  w.anchor = *anchor;

  std::map<Tuple, Complex> coeffs;
  for (int i = 0; i < n; ++i) {
    if (std::abs(base_coeffs[i]) <= kCoefficientFloor) continue;
    if (std::find(w.anchor.begin(), w.anchor.end(), i) != w.anchor.end()) continue;
    Tuple slots{i};
    slots.insert(slots.end(), w.anchor.begin(), w.anchor.end());
    std::vector<int> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      Tuple t(m);
      for (int s = 0; s < m; ++s) t[s] = slots[sigma[s]];
      coeffs[t] += double(permutation_sign(sigma)) * base_coeffs[i];
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }

  Vector acc;
  for (const auto& [t, c] : coeffs) {
    const StateVector s = tuple_state(e, t);
    if (acc.size() == 0) acc = Vector::Zero(s.amplitudes().size());
    acc += c * s.amplitudes();
    w.coefficients.push_back({t, c});
  }
  w.residual_norm = acc.norm();
  const bool nontrivial = std::any_of(w.coefficients.begin(), w.coefficients.end(),
                                      [](const auto& tc) { return std::abs(tc.second) > kCoefficientFloor; });
  w.valid = nontrivial && w.residual_norm <= 1e-9 * std::max(1.0, scale);
  return w;
}

SlotGrouping group_by_first_slot(const DerivedMarkingSet& d) {
  SlotGrouping g;
  for (std::size_t k = 0; k < d.tuples.size(); ++k) {
    g.group_index.push_back(d.tuples[k].front());
    g.groups[d.tuples[k].front()].push_back(k);
  }
  return g;
}

}  // namespace locc
