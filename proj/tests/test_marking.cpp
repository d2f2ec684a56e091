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

#include <doctest.h>

#include "locc/error.hpp"
#include "locc/marking.hpp"
#include "test_util.hpp"

using namespace locc;

namespace {

// Party-major amplitude of psi_i (x) psi_j for a 2x2 base, written out by index.
oracle::Vec two_slot_oracle(const oracle::Vec& x, const oracle::Vec& y) {
  oracle::Vec out(16);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          out(((a1 * 2 + a2) * 2 + b1) * 2 + b2) = x(a1 * 2 + b1) * y(a2 * 2 + b2);
  return out;
}

}  // namespace

TEST_CASE("ordered selections") {
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= n; ++m) {
      const auto lib = ordered_selections(n, m);
      const auto ref = oracle::selections(n, m);
      REQUIRE(lib.size() == ref.size());
      for (std::size_t k = 0; k < lib.size(); ++k) CHECK(lib[k] == ref[k]);
    }
  CHECK(ordered_selections(4, 2).size() == 12);
  CHECK(ordered_selections(9, 3).size() == 504);
}

TEST_CASE("marking structure is party-major") {
  const PartyStructure s = marking_structure(PartyStructure::bipartite(2, 3), 2);
  CHECK(s.factor_dims == Dims{2, 2, 3, 3});
  CHECK(s.factor_assignment == std::vector<int>{0, 0, 1, 1});
  CHECK(marking_permutation(PartyStructure::bipartite(2, 3), 2) == std::vector<int>{0, 2, 1, 3});
}

TEST_CASE("derived states match the hand-built regrouping") {
  const Ensemble bell = build_named("bell");
  const DerivedMarkingSet d = derive_marking_set(bell, 2);
  CHECK(d.derived.size() == 12);
  CHECK(d.derived.name == "bell[m=2]");
  CHECK(d.derived.derived_from.has_value());
  const auto base = testutil::amplitudes(bell);
  for (std::size_t k = 0; k < d.tuples.size(); ++k) {
    const auto& t = d.tuples[k];
    CHECK(d.derived.members[k].label == bell.members[t[0]].label + "," + bell.members[t[1]].label);
    CHECK((d.derived.members[k].state().amplitudes() - two_slot_oracle(base[t[0]], base[t[1]]))
              .norm() < 1e-14);
    CHECK(d.index_of(t) == k);
  }
}

TEST_CASE("product factors propagate into the derived set") {
  const DerivedMarkingSet d = derive_marking_set(build_named("duan4"), 2);
  CHECK(d.derived.all_product());
  CHECK(d.derived.structure.num_parties() == 2);
  CHECK(d.derived.structure.party_dim(0) == 4);
}

TEST_CASE("independence verdicts") {
  auto verdict = [](const Ensemble& e) { return check_linear_independence(e.states()); };
  CHECK(verdict(build_named("bell")).rank == 4);
  CHECK(verdict(build_named("double_sic_parallel")).rank == 3);
  CHECK_FALSE(verdict(build_named("double_sic_parallel")).independent);
  CHECK(verdict(build_named("double_sic_antiparallel")).independent);
  const auto dd = derive_marking_set(build_named("duan4"), 2).derived;
  const auto v = verdict(dd);
  CHECK(v.independent);
  CHECK(v.rank == oracle::gs_rank(testutil::amplitudes(dd)));
  CHECK_FALSE(find_linear_dependence(build_named("bell").states()).has_value());
}

TEST_CASE("dependence witnesses annihilate") {
  const Ensemble e = build_named("double_sic_parallel");
  const auto alpha = find_linear_dependence(e.states());
  REQUIRE(alpha.has_value());
  const auto base = testutil::amplitudes(e);
  oracle::Vec sum = oracle::Vec::Zero(4);
  for (int i = 0; i < 4; ++i) sum += (*alpha)[i] * base[i];
  CHECK(sum.norm() < 1e-9);
  for (int m = 1; m <= 3; ++m) {
    const DependenceWitness w = build_dependence_witness(e, *alpha, m);
    CAPTURE(m);
    CHECK(w.valid);
    CHECK(w.anchor.size() == static_cast<std::size_t>(m - 1));
    oracle::Vec acc = oracle::Vec::Zero(static_cast<Eigen::Index>(std::pow(4, m)));
    double biggest = 0.0;
    for (const auto& [t, c] : w.coefficients) {
      std::vector<oracle::Vec> parts;
      for (int i : t) parts.push_back(base[i]);
      acc += c * oracle::kron_all(parts);
      biggest = std::max(biggest, std::abs(c));
    }
    CHECK(biggest > 0.1);
    CHECK(acc.norm() <= 1e-9);
  }
  const std::vector<Complex> junk{1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(build_dependence_witness(e, junk, 2), Error);
}

TEST_CASE("first-slot grouping") {
  const DerivedMarkingSet d = derive_marking_set(build_named("duan4"), 2);
  const SlotGrouping g = group_by_first_slot(d);
  CHECK(g.groups.size() == 4);
  for (const auto& [member, idx] : g.groups) CHECK(idx.size() == 3);
}

TEST_CASE("derivation preconditions") {
  CHECK_THROWS_AS(derive_marking_set(build_named("yu"), 2), Error);
  CHECK_THROWS_AS(derive_marking_set(build_named("bell"), 5), Error);
  CHECK_THROWS_AS(derive_marking_set(build_named("bell"), 0), Error);
}
