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

#include "locc/upb.hpp"

#include <algorithm>

#include "locc/error.hpp"
#include "locc/marking.hpp"

namespace locc {

namespace {

struct LocalFactors {
  Matrix a;  // column i: member i's A-factor
  Matrix b;
};

std::optional<LocalFactors> try_local_factors(const Ensemble& e, const ToleranceConfig& tol) {
  if (e.structure.num_parties() != 2) return std::nullopt;
  const auto da = static_cast<Eigen::Index>(e.structure.party_dim(0));
  const auto db = static_cast<Eigen::Index>(e.structure.party_dim(1));
  const auto n = static_cast<Eigen::Index>(e.size());
  LocalFactors lf{Matrix(da, n), Matrix(db, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& m = e.members[i];
    if (!m.is_pure()) return std::nullopt;
    std::optional<std::vector<StateVector>> f = m.product_factors;
    if (!f) f = factorize_across_parties(m.state(), e.structure, tol);
    if (!f) return std::nullopt;
    lf.a.col(i) = (*f)[0].amplitudes();
    lf.b.col(i) = (*f)[1].amplitudes();
  }
  return lf;
}

LocalFactors local_factors(const Ensemble& e, const ToleranceConfig& tol) {
  require(e.structure.num_parties() == 2, "partition analysis needs a bipartite ensemble");
  auto lf = try_local_factors(e, tol);
  require(lf.has_value(), "partition analysis needs every member to be a pure product state");
  return *lf;
}

Matrix columns(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = m.col(static_cast<Eigen::Index>(idx[k]));
  return out;
}

PartitionWitness make_witness(const Ensemble& e, const LocalFactors& lf,
                              std::vector<std::size_t> set_a, std::vector<std::size_t> set_b,
                              const ToleranceConfig& tol) {
  PartitionWitness w;
  w.set_a = std::move(set_a);
  w.set_b = std::move(set_b);
  for (auto i : w.set_a) w.set_a_labels.push_back(e.members[i].label);
  for (auto i : w.set_b) w.set_b_labels.push_back(e.members[i].label);
  const Matrix ca = columns(lf.a, w.set_a);
  const Matrix cb = columns(lf.b, w.set_b);
  w.r_a = numerical_rank(ca, tol.rank_rel_tol);
  w.r_b = numerical_rank(cb, tol.rank_rel_tol);
  if (w.r_a < lf.a.rows() && w.r_b < lf.b.rows()) {
    const Matrix qa = orthocomplement_basis(ca, tol.rank_rel_tol);
    const Matrix qb = orthocomplement_basis(cb, tol.rank_rel_tol);
    w.extension_state = assemble_product(
        e.structure, std::vector<StateVector>{StateVector(e.structure.local_dims(0), qa.col(0)),
                                              StateVector(e.structure.local_dims(1), qb.col(0))});
  }
  return w;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Ensemble without(const Ensemble& e, std::size_t drop) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (i != drop) keep.push_back(i);
  return subset(e, keep, e.name + "\\" + e.members[drop].label);
}

}  // namespace

ExtendibilityResult find_orthogonal_product_state(const Ensemble& e, const ToleranceConfig& tol) {
  const LocalFactors lf = local_factors(e, tol);
  const std::size_t n = e.size();
  require(n < 63, "too many members for partition enumeration", ErrorKind::cap_exceeded);
  ExtendibilityResult res;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++res.partitions_examined;
    std::vector<std::size_t> sa, sb;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? sa : sb).push_back(i);
    if (numerical_rank(columns(lf.a, sa), tol.rank_rel_tol) >= lf.a.rows()) continue;
    if (numerical_rank(columns(lf.b, sb), tol.rank_rel_tol) >= lf.b.rows()) continue;
    res.extendible = true;
    res.witness = make_witness(e, lf, std::move(sa), std::move(sb), tol);
    return res;
  }
  return res;
}

std::vector<PartitionWitness> enumerate_low_rank_partitions(const Ensemble& e, Side side,
                                                            int rank_bound,
                                                            std::optional<int> subset_size,
                                                            const ToleranceConfig& tol) {
  const LocalFactors lf = local_factors(e, tol);
  const std::size_t n = e.size();
  std::vector<PartitionWitness> out;
  std::size_t lo = 0, hi = n;
  if (subset_size) {
    require(*subset_size >= 0 && static_cast<std::size_t>(*subset_size) <= n,
            "subset size out of range");
    lo = hi = static_cast<std::size_t>(*subset_size);
  }
  const Matrix& chosen = side == Side::A ? lf.a : lf.b;
  for (std::size_t k = lo; k <= hi; ++k) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    do {
      if (numerical_rank(columns(chosen, c), tol.rank_rel_tol) <= rank_bound) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
          if (!std::binary_search(c.begin(), c.end(), i)) rest.push_back(i);
        out.push_back(side == Side::A ? make_witness(e, lf, c, rest, tol)
                                      : make_witness(e, lf, rest, c, tol));
      }
    } while (k > 0 && next_combination(c, n));
  }
  return out;
}

namespace {

// Extendibility of a maximal subset, decided exactly where possible.
SubsetReport subset_extendibility(const Ensemble& sub, const std::string& removed,
                                  const ToleranceConfig& tol) {
  SubsetReport r;
  r.removed_label = removed;
  if (try_local_factors(sub, tol)) {
    const auto ext = find_orthogonal_product_state(sub, tol);
    r.decided = true;
    r.extendible = ext.extendible;
    r.method = "partition";
    r.witness = ext.witness;
    return r;
  }
  const auto comp = orthocomplement(sub.states(), sub.structure.total_dim(), tol);
  if (comp.empty()) {
    r.decided = true;
    r.extendible = false;
    r.method = "full_span";
  } else if (comp.size() == 1) {
    const StateVector c(sub.structure.factor_dims, comp.front().amplitudes());
    r.decided = true;
    r.extendible = is_fully_product(c, sub.structure, tol);
    r.method = "complement_schmidt";
    r.complement_vector = c;
  } else {
    r.decided = false;
    r.method = "undecidable";
  }
  return r;
}

}  // namespace

UBClassification classify_unextendible_basis(const Ensemble& e, const ToleranceConfig& tol) {
  tol.validate();
  require(!e.members.empty(), "ensemble has no members");
  for (const auto& m : e.members)
    require(m.is_pure(), "member '" + m.label + "' is mixed; classification needs pure members");
  const auto states = e.states();
  const auto ind = check_linear_independence(states, tol);
  require(ind.independent, "members are linearly dependent (rank " + std::to_string(ind.rank) +
                               " of " + std::to_string(ind.count) + "); a UB must be independent");

  UBClassification c;
  const auto dim = static_cast<int>(e.structure.total_dim());
  c.complement_dim = dim - ind.rank;
  c.spans_full_space = c.complement_dim == 0;
  const bool all_product = try_local_factors(e, tol).has_value();
  const bool products = std::all_of(e.members.begin(), e.members.end(), [&](const EnsembleMember& m) {
    return m.product_factors || is_fully_product(m.state(), e.structure, tol);
  });

  if (all_product) {
    c.method = "partition";
    const auto ext = find_orthogonal_product_state(e, tol);
    c.is_ub = !ext.extendible;
    c.extension = ext.witness;
  } else if (c.spans_full_space) {
    c.method = "full_span";
    c.is_ub = true;
  } else if (c.complement_dim == 1) {
    c.method = "complement_schmidt";
    const auto comp = orthocomplement(states, e.structure.total_dim(), tol);
    c.is_ub = !is_fully_product(StateVector(e.structure.factor_dims, comp.front().amplitudes()),
                                e.structure, tol);
  } else {
    c.decidable = false;
    c.reason = "members are not all products, the complement has dimension " +
               std::to_string(c.complement_dim) +
               "; product vectors in such a subspace are not decided by exact methods";
    return c;
  }

  if (c.is_ub) {
    bool all_extendible = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      SubsetReport r = subset_extendibility(without(e, i), e.members[i].label, tol);
      if (!r.decided) {
        c.decidable = false;
        c.reason = "extendibility of the subset without '" + e.members[i].label +
                   "' is outside the exactly decided fragment";
      }
      all_extendible = all_extendible && r.decided && r.extendible;
      c.maximal_subset_reports.push_back(std::move(r));
    }
    c.is_gub = all_extendible;
  }
  c.is_upb = c.is_ub && products;
  c.is_gupb = c.is_upb && c.is_gub;
  return c;
}

LemmaCrosscheck crosscheck_lemma_gub(const Ensemble& e, const DetectConfig& cfg) {
  LemmaCrosscheck x;
  const UBClassification cls = classify_unextendible_basis(e, cfg.tol);
  x.is_ub = cls.is_ub;
  x.is_gub = cls.is_gub;
  if (!cls.decidable) {
    x.skip_reason = "classification undecidable: " + cls.reason;
    return x;
  }
  if (!cls.is_ub) {
    x.skip_reason = "ensemble is extendible, so it is not a UB";
    return x;
  }
  const CLSDVerdict v = clsd_verdict(e, cfg);
  x.clsd = v.overall;
  x.clsd_method = v.method;
  if (v.overall == Overall::undetermined) {
    x.skip_reason = "local distinguishability verdict is undetermined";
    return x;
  }
  x.checked = true;
  x.consistent = x.is_gub == (v.overall == Overall::distinguishable);
  return x;
}

}  // namespace locc
