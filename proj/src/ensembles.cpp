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

#include "locc/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "locc/error.hpp"

namespace locc {

PartyStructure PartyStructure::single(int dim) { return {{dim}, {0}}; }

PartyStructure PartyStructure::bipartite(int dim_a, int dim_b) {
  return {{dim_a, dim_b}, {0, 1}};
}

int PartyStructure::num_parties() const {
  if (factor_assignment.empty()) return 0;
  return *std::max_element(factor_assignment.begin(), factor_assignment.end()) + 1;
}

std::vector<int> PartyStructure::factors_of(int party) const {
  std::vector<int> out;
  for (int f = 0; f < num_factors(); ++f)
    if (factor_assignment[f] == party) out.push_back(f);
  return out;
}

Dims PartyStructure::local_dims(int party) const {
  Dims out;
  for (int f : factors_of(party)) out.push_back(factor_dims[f]);
  return out;
}

int PartyStructure::party_dim(int party) const {
  return static_cast<int>(locc::total_dim(local_dims(party)));
}

Dims PartyStructure::party_dims() const {
  Dims out;
  for (int p = 0; p < num_parties(); ++p) out.push_back(party_dim(p));
  return out;
}

std::vector<int> PartyStructure::party_major_permutation() const {
  std::vector<int> perm;
  for (int p = 0; p < num_parties(); ++p) {
    const auto fs = factors_of(p);
    perm.insert(perm.end(), fs.begin(), fs.end());
  }
  return perm;
}

void PartyStructure::validate() const {
  require(!factor_dims.empty(), "party structure has no tensor factors");
  require(factor_dims.size() == factor_assignment.size(),
          "factor_assignment must list one party per tensor factor");
  for (int d : factor_dims) require(d > 0, "tensor factor dimensions must be positive");
  for (int p : factor_assignment) require(p >= 0, "party indices must be nonnegative");
  for (int p = 0; p < num_parties(); ++p)
    require(!factors_of(p).empty(),
            "party " + std::to_string(p) + " owns no tensor factor");
}

StateVector assemble_product(const PartyStructure& structure,
                             std::span<const StateVector> per_party) {
  require(static_cast<int>(per_party.size()) == structure.num_parties(),
          "need one local vector per party", ErrorKind::dimension_mismatch);
  for (int p = 0; p < structure.num_parties(); ++p)
    require(per_party[p].size() == static_cast<std::size_t>(structure.party_dim(p)),
            "local vector of party " + std::to_string(p) + " has the wrong dimension",
            ErrorKind::dimension_mismatch);
  std::vector<StateVector> locals;
  for (int p = 0; p < structure.num_parties(); ++p)
    locals.emplace_back(structure.local_dims(p), per_party[p].amplitudes());
  const StateVector party_major = tensor_product(locals);
  const auto inverse = inverse_permutation(structure.party_major_permutation());
  return regroup_factors(party_major, inverse);
}

std::optional<std::vector<StateVector>> factorize_across_parties(
    const StateVector& s, const PartyStructure& structure, const ToleranceConfig& tol) {
  require(s.dims() == structure.factor_dims, "state does not match the party structure",
          ErrorKind::dimension_mismatch);
  const int k = structure.num_parties();
  Vector rest = regroup_factors(s, structure.party_major_permutation()).amplitudes();
  std::vector<StateVector> factors;
  for (int p = 0; p + 1 < k; ++p) {
    const Eigen::Index rows = structure.party_dim(p);
    const Eigen::Index cols = rest.size() / rows;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rest(i * cols + j);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
    if (numerical_rank(m, tol.rank_rel_tol) != 1) return std::nullopt;
    const Vector u = svd.matrixU().col(0);
    factors.emplace_back(structure.local_dims(p), u);
    rest = (u.adjoint() * m).transpose();
  }
  factors.emplace_back(structure.local_dims(k - 1), rest);
  return factors;
}

bool is_fully_product(const StateVector& s, const PartyStructure& structure,
                      const ToleranceConfig& tol) {
  return factorize_across_parties(s, structure, tol).has_value();
}

const StateVector& EnsembleMember::state() const {
  require(is_pure(), "member '" + label + "' is mixed");
  return std::get<StateVector>(body);
}

Operator EnsembleMember::density() const {
  if (is_pure()) return Operator::projector(std::get<StateVector>(body));
  return std::get<Operator>(body);
}

std::size_t Ensemble::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].label == label) return i;
  fail(ErrorKind::invalid_input, "no member labelled '" + std::string(label) + "'");
}

bool Ensemble::all_pure() const {
  return std::all_of(members.begin(), members.end(),
                     [](const EnsembleMember& m) { return m.is_pure(); });
}

bool Ensemble::all_product() const {
  return std::all_of(members.begin(), members.end(), [](const EnsembleMember& m) {
    return m.is_pure() && m.product_factors.has_value();
  });
}

std::vector<StateVector> Ensemble::states() const {
  std::vector<StateVector> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.state());
  return out;
}

Ensemble with_inferred_factors(Ensemble e, const ToleranceConfig& tol) {
  for (auto& m : e.members)
    if (m.is_pure() && !m.product_factors)
      m.product_factors = factorize_across_parties(m.state(), e.structure, tol);
  return e;
}

Ensemble subset(const Ensemble& e, std::span<const std::size_t> indices, std::string name) {
  Ensemble out;
  out.name = name.empty() ? e.name + "_subset" : std::move(name);
  out.structure = e.structure;
  for (std::size_t i : indices) {
    require(i < e.size(), "subset index out of range");
    out.members.push_back(e.members[i]);
  }
  return out;
}

ValidationReport validate(const Ensemble& e, const ToleranceConfig& tol) {
  ValidationReport report;
  auto add = [&](const std::string& label, std::string message) {
    report.violations.push_back({label, std::move(message)});
  };
  try {
    e.structure.validate();
  } catch (const Error& err) {
    add("", err.what());
    return report;
  }
  if (e.members.empty()) add("", "ensemble has no members");

  std::set<std::string> seen;
  for (const auto& m : e.members) {
    if (!seen.insert(m.label).second) add(m.label, "duplicate label");
    const Dims& dims = m.is_pure() ? m.state().dims() : std::get<Operator>(m.body).dims();
    if (dims != e.structure.factor_dims) {
      add(m.label, "dimension mismatch");
      continue;
    }
    if (m.is_pure()) {
      if (std::abs(m.state().norm() - 1.0) > 1e-9) add(m.label, "norm out of tolerance");
    } else {
      const Matrix& rho = std::get<Operator>(m.body).matrix();
      if (max_abs_diff(rho, rho.adjoint()) > tol.identity_tol) add(m.label, "not Hermitian");
      if (std::abs(rho.trace() - Complex(1.0)) > 1e-9) add(m.label, "trace out of tolerance");
      if (min_eigenvalue(rho) < -1e-9) add(m.label, "not positive semidefinite");
      if (m.product_factors) add(m.label, "product factors on a mixed member");
    }
    if (m.is_pure() && m.product_factors) {
      const auto& pf = *m.product_factors;
      bool shapes_ok = static_cast<int>(pf.size()) == e.structure.num_parties();
      for (std::size_t p = 0; shapes_ok && p < pf.size(); ++p)
        shapes_ok = pf[p].size() ==
                    static_cast<std::size_t>(e.structure.party_dim(static_cast<int>(p)));
      if (!shapes_ok) {
        add(m.label, "factorization mismatch");
      } else {
        const StateVector rebuilt = assemble_product(e.structure, pf);
        if (max_abs_diff(rebuilt.amplitudes(), m.state().amplitudes()) > tol.orth_tol)
          add(m.label, "factorization mismatch");
      }
    }
  }
  return report;
}

}  // namespace locc
