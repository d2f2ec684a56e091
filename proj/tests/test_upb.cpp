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
#include "locc/upb.hpp"
#include "test_util.hpp"

using namespace locc;

namespace {

void check_extension(const Ensemble& e, const PartitionWitness& w) {
  REQUIRE(w.extension_state.has_value());
  const StateVector& x = *w.extension_state;
  CHECK(x.norm() == doctest::Approx(1.0));
  for (const auto& m : e.members) CHECK(std::abs(hermitian_inner(m.state(), x)) < 1e-9);
  const std::vector<int> left{0};
  CHECK(schmidt_rank(x, left) == 1);
}

}  // namespace

TEST_CASE("tiles is a genuine UPB") {
  const Ensemble t = build_named("upb_tiles");
  CHECK_FALSE(find_orthogonal_product_state(t).extendible);
  const UBClassification c = classify_unextendible_basis(t);
  CHECK(c.decidable);
  CHECK(c.is_upb);
  CHECK(c.is_gupb);
  CHECK(c.complement_dim == 4);
  CHECK(c.maximal_subset_reports.size() == 5);
  for (const auto& s : c.maximal_subset_reports) {
    CHECK(s.decided);
    CHECK(s.extendible);
  }
}

TEST_CASE("double trine is a genuine unextendible basis") {
  const UBClassification c = classify_unextendible_basis(build_named("pw_trine"));
  CHECK(c.is_ub);
  CHECK(c.is_gub);
  CHECK(c.complement_dim == 1);
}

TEST_CASE("antiparallel double SIC and its marking set are UPBs but not genuine") {
  const UBClassification base = classify_unextendible_basis(build_named("double_sic_antiparallel"));
  CHECK(base.is_upb);
  CHECK_FALSE(base.is_gupb);
  CHECK(base.spans_full_space);
  const Ensemble d = derive_marking_set(build_named("double_sic_antiparallel"), 2).derived;
  const UBClassification c = classify_unextendible_basis(d);
  CHECK(c.decidable);
  CHECK(c.is_upb);
  CHECK_FALSE(c.is_gupb);
  CHECK(c.complement_dim == 4);
  CHECK(enumerate_low_rank_partitions(d, Side::A, 3, 6).size() == 4);
}

TEST_CASE("bell basis is unextendible but not genuine") {
  const UBClassification c = classify_unextendible_basis(build_named("bell"));
  CHECK(c.is_ub);
  CHECK_FALSE(c.is_gub);
  CHECK_FALSE(c.is_upb);
}

TEST_CASE("classification fragment boundaries") {
  const Ensemble bell = build_named("bell");
  const std::vector<std::size_t> pair{0, 1};
  const UBClassification c = classify_unextendible_basis(subset(bell, pair, "pair"));
  CHECK_FALSE(c.decidable);
  CHECK_FALSE(c.reason.empty());
  try {
    classify_unextendible_basis(build_named("double_sic_parallel"));
    FAIL("dependent input accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
}

TEST_CASE("extension witnesses are orthogonal products") {
  const Ensemble pw = build_named("duan4");
  const std::vector<std::size_t> two{0, 1};
  const Ensemble sub = subset(pw, two, "two");
  const ExtendibilityResult r = find_orthogonal_product_state(sub);
  REQUIRE(r.extendible);
  check_extension(sub, *r.witness);
}

TEST_CASE("partition search agrees with the grid oracle") {
  const auto ensembles = oracle::random_qubit_ensembles(12, 4242);
  for (const auto& members : ensembles) {
    const Ensemble e = testutil::qubit_pair_ensemble(members);
    const auto verdict = oracle::classify_min(oracle::orthogonal_product_min(members));
    REQUIRE(verdict != oracle::Verdict::ambiguous);
    const ExtendibilityResult r = find_orthogonal_product_state(e);
    CHECK(r.extendible == (verdict == oracle::Verdict::feasible));
    if (r.extendible) check_extension(e, *r.witness);
  }
}

TEST_CASE("lemma cross-check") {
  for (auto name : {"pw_trine", "double_sic_antiparallel", "upb_tiles"}) {
    CAPTURE(name);
    const LemmaCrosscheck c = crosscheck_lemma_gub(build_named(name));
    CHECK(c.checked);
    CHECK(c.consistent);
  }
  CHECK_THROWS_AS(crosscheck_lemma_gub(build_named("yu")), Error);
  const std::vector<std::size_t> pair{0, 1};
  const LemmaCrosscheck skipped = crosscheck_lemma_gub(subset(build_named("bell"), pair, "p"));
  CHECK_FALSE(skipped.checked);
  CHECK_FALSE(skipped.skip_reason.empty());
}
