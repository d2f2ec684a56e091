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

// Acceptance runner. One line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "locc/detect.hpp"
#include "locc/ensembles.hpp"
#include "locc/marking.hpp"
#include "locc/protocol.hpp"
#include "locc/upb.hpp"
#include "test_util.hpp"

using namespace locc;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> body;
};

double min_success(const SimulationReport& r) {
  double m = 1.0;
  for (const auto& h : r.per_hypothesis) m = std::min(m, h.success);
  return m;
}

int oracle_rank(const Ensemble& e) { return oracle::gs_rank(testutil::amplitudes(e)); }

// Schmidt rank of a two-qubit vector: 1 iff the reshaped determinant vanishes.
int two_qubit_schmidt(const oracle::Vec& v) {
  return std::abs(v(0) * v(3) - v(1) * v(2)) < 1e-9 ? 1 : 2;
}

Ensemble anti_set() { return derive_marking_set(build_named("double_sic_antiparallel"), 2).derived; }

Outcome ranks() {
  const Ensemble bell = build_named("bell");
  const Ensemble par = build_named("double_sic_parallel");
  const Ensemble anti = build_named("double_sic_antiparallel");
  bool ok = true;
  auto lib_rank = [](const Ensemble& e) { return check_linear_independence(e.states()).rank; };
  ok = ok && lib_rank(bell) == 4 && oracle_rank(bell) == 4;
  ok = ok && lib_rank(par) == 3 && oracle_rank(par) == 3;
  ok = ok && lib_rank(anti) == 4 && oracle_rank(anti) == 4;
  int derived_checked = 0;
  for (auto name : named_ensemble_names()) {
    const Ensemble e = build_named(name);
    if (!e.all_pure() || !check_linear_independence(e.states()).independent) continue;
    const int top = std::min<int>(static_cast<int>(e.size()), 3);
    for (int m = 1; m <= top; ++m) {
      const Ensemble d = derive_marking_set(e, m).derived;
      const IndependenceVerdict v = check_linear_independence(d.states());
      ok = ok && v.independent && v.rank == static_cast<int>(d.size());
      ++derived_checked;
    }
  }
  return {ok, std::to_string(derived_checked) + " derived sets independent"};
}

Outcome trine() {
  const Ensemble pw = build_named("pw_trine");
  // |<w_j^perp|w_k>|^2 for trine angles 2 pi / 3 apart on the Bloch circle.
  const double s1 = std::pow(std::sin(std::numbers::pi / 3), 2);
  const double want = s1 * s1;
  bool ok = std::abs(want - 9.0 / 16.0) < 1e-12;
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const SimulationReport r = simulate(*pw_conclusive(k), HypothesisSet::from_ensemble(pw));
    ok = ok && r.zero_error && r.max_error <= 1e-12;
    const std::string label = "w" + std::to_string(k) + "w" + std::to_string(k);
    for (const auto& h : r.per_hypothesis)
      if (h.label == label) {
        worst = std::max(worst, std::abs(h.success - want));
        ok = ok && std::abs(h.success - want) <= 1e-9;
      }
  }
  return {ok, "max |p - 9/16| = " + std::to_string(worst)};
}

Outcome appendix_d() {
  const Ensemble full = anti_set();
  bool ok = oracle_rank(full) == 12 && check_linear_independence(full.states()).rank == 12;
  ok = ok && !find_orthogonal_product_state(full).extendible;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full.members[i].label != "gamma1,gamma2") keep.push_back(i);
  const Ensemble t = subset(full, keep, "T");
  auto count = [&](const Ensemble& e, int size) {
    const auto ws = enumerate_low_rank_partitions(e, Side::A, 3, size);
    for (const auto& w : ws) ok = ok && w.r_b == 4;
    return ws.size();
  };
  const auto c1 = count(full, 6), c2 = count(t, 5), c3 = count(t, 6);
  ok = ok && c1 == 4 && c2 == 21 && c3 == 2;
  const UBClassification c = classify_unextendible_basis(full);
  ok = ok && c.is_upb && !c.is_gupb;
  const CLSDVerdict v = clsm_verdict(build_named("double_sic_antiparallel"), 2);
  ok = ok && v.overall == Overall::indistinguishable;
  return {ok, "partition counts " + std::to_string(c1) + "/" + std::to_string(c2) + "/" +
                  std::to_string(c3)};
}

Outcome appendix_e() {
  const Ensemble d = derive_marking_set(build_named("duan4"), 2).derived;
  const ExactDetectResult r = exact_product_detect(d, "D1,D2");
  bool ok = !r.feasible() && r.branches_examined == 2048 && r.infeasible.has_value() &&
            r.infeasible->per_branch.size() == 2048;
  return {ok, std::to_string(r.branches_examined) + " branches, all failed"};
}

Outcome antiparallel_base() {
  const Ensemble e = build_named("double_sic_antiparallel");
  const auto amps = testutil::amplitudes(e);
  bool ok = true;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::vector<oracle::Vec> rest;
    for (std::size_t j = 0; j < amps.size(); ++j)
      if (j != i) rest.push_back(amps[j]);
    const auto comp = oracle::gs_complement(rest, 4);
    ok = ok && comp.size() == 1 && two_qubit_schmidt(comp[0]) == 2;
    ok = ok && !exact_product_detect(e, e.members[i].label).feasible();
  }
  ok = ok && clsd_verdict(e).overall == Overall::indistinguishable;
  ok = ok && check_linear_independence(e.states()).independent;
  return {ok, "4 complements of Schmidt rank 2"};
}

Outcome bennett() {
  const Ensemble e = build_named("bennett9");
  std::map<std::string, DetectingCertificate> certs;
  bool ok = true;
  for (const auto& m : e.members) {
    const ExactDetectResult r = exact_product_detect(e, m.label);
    ok = ok && r.feasible();
    if (r.feasible()) certs.emplace(m.label, *r.certificate);
  }
  if (!ok) return {false, "missing base certificate"};
  std::vector<oracle::Vec> parts;
  for (const auto& v : certs.at("psi1").per_party_vectors) parts.push_back(v.amplitudes());
  const oracle::Vec det = oracle::normalized(oracle::kron_all(parts));
  ok = ok && std::abs(std::abs(det(4)) - 1.0) < 1e-9;
  const DerivedMarkingSet d = derive_marking_set(e, 2);
  const SimulationReport r =
      simulate(*build_sequential_marking_protocol(d, certs), HypothesisSet::from_marking(d));
  ok = ok && r.zero_error && r.per_hypothesis.size() == 72 && min_success(r) > 0.0;
  return {ok, std::to_string(r.per_hypothesis.size()) + " hypotheses, min success " +
                  std::to_string(min_success(r))};
}

// Diagonal of sigma/phi in the computational basis, then two-slot declarations.
double yu_density_oracle(int d, bool strict) {
  auto flag = [&](int i, int j) { return strict ? (i == 0 && j == 1) : i != j; };
  const double sig = 1.0 / (d * d - 1);
  double p = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double diag = (i == j) ? (1.0 - 1.0 / d) * sig : sig;
      if (flag(i, j)) p += diag;
    }
  return p;
}

Outcome yu() {
  bool ok = true;
  std::string detail;
  for (int d : {2, 3}) {
    const HypothesisSet hs = mixed_marking_hypotheses(build_named("yu", d), 2);
    for (YuMode mode : {YuMode::strict01, YuMode::any_anticorrelated}) {
      const bool strict = mode == YuMode::strict01;
      const SimulationReport r = simulate(*yu_marking(d, mode), hs);
      const double want = yu_density_oracle(d, strict);
      const double closed = strict ? 1.0 / (d * d - 1) : double(d) / (d + 1);
      ok = ok && r.zero_error && std::abs(want - closed) <= 1e-9;
      for (const auto& h : r.per_hypothesis)
        if (h.label == "sigma,rho") ok = ok && std::abs(h.success - want) <= 1e-9;
      detail += (detail.empty() ? "" : " ") + std::string(to_string(mode)) + "@" +
                std::to_string(d) + "=" + std::to_string(want);
    }
  }
  return {ok, detail};
}

Outcome upb_pair() {
  const SimulationReport r =
      simulate(*upb_marking(), mixed_marking_hypotheses(build_named("xb_from_upb"), 2));
  return {r.zero_error && r.per_hypothesis.size() == 2 && min_success(r) > 0.0,
          "min success " + std::to_string(min_success(r))};
}

Outcome smolin() {
  const double res = smolin_identity_residual();
  char buf[64];
  std::snprintf(buf, sizeof buf, "residual %.2e", res);
  return {res <= 1e-12, buf};
}

Outcome heuristic_bell() {
  const Ensemble d = derive_marking_set(build_named("bell"), 2).derived;
  const HeuristicSearchReport h = heuristic_detect(d, "B1,B2", 1000, 42);
  const bool ok = h.verdict == HeuristicVerdict::not_found && h.best_offtarget_residual >= 1e-3;
  return {ok, "heuristic-pass: not_found, best residual " +
                  std::to_string(h.best_offtarget_residual)};
}

Outcome dependence() {
  const Ensemble e = build_named("double_sic_parallel");
  const auto alpha = find_linear_dependence(e.states());
  if (!alpha) return {false, "no dependence found"};
  const auto base = testutil::amplitudes(e);
  double worst = 0.0;
  bool ok = true;
  for (int m = 1; m <= 3; ++m) {
    const DependenceWitness w = build_dependence_witness(e, *alpha, m);
    oracle::Vec acc = oracle::Vec::Zero(static_cast<Eigen::Index>(std::pow(4, m)));
    for (const auto& [t, c] : w.coefficients) {
      std::vector<oracle::Vec> parts;
      for (int i : t) parts.push_back(base[i]);
      acc += c * oracle::kron_all(parts);
    }
    worst = std::max(worst, acc.norm());
    ok = ok && w.valid && !w.coefficients.empty();
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max residual %.2e", worst);
  return {ok && worst <= 1e-9, buf};
}

Outcome grid_oracle() {
  const auto ensembles = oracle::random_qubit_ensembles(50, 2026);
  int agree = 0, disagree = 0, ambiguous = 0;
  for (const auto& members : ensembles) {
    const Ensemble e = testutil::qubit_pair_ensemble(members);
    for (std::size_t t = 0; t < members.size(); ++t) {
      const auto v = oracle::classify_min(oracle::detector_ratio_min(members, t));
      if (v == oracle::Verdict::ambiguous) {
        ++ambiguous;
        continue;
      }
      const bool lib = exact_product_detect(e, e.members[t].label).feasible();
      (lib == (v == oracle::Verdict::feasible) ? agree : disagree)++;
    }
    const auto v = oracle::classify_min(oracle::orthogonal_product_min(members));
    if (v == oracle::Verdict::ambiguous) {
      ++ambiguous;
      continue;
    }
    const bool lib = find_orthogonal_product_state(e).extendible;
    (lib == (v == oracle::Verdict::feasible) ? agree : disagree)++;
  }
  return {disagree == 0 && ambiguous == 0,
          std::to_string(agree) + " agree, " + std::to_string(disagree) + " disagree, " +
              std::to_string(ambiguous) + " ambiguous"};
}

Outcome crosscheck() {
  bool ok = true;
  for (const Ensemble& e :
       {build_named("pw_trine"), build_named("double_sic_antiparallel"), anti_set()}) {
    const LemmaCrosscheck c = crosscheck_lemma_gub(e);
    ok = ok && c.checked && c.consistent;
  }
  return {ok, "3 ensembles consistent"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "rank suite and derived-set independence", 1, ranks},
      {2, "double trine conclusive protocol", 1, trine},
      {3, "antiparallel marking set partitions and UPB status", 10, appendix_d},
      {4, "Duan marking target branch enumeration", 5, appendix_e},
      {5, "antiparallel SIC complements and CLSD", 2, antiparallel_base},
      {6, "Bennett detectors and two-slot marking", 30, bennett},
      {7, "Yu pair marking against density oracle", 1, yu},
      {8, "UPB-based pair marking", 1, upb_pair},
      {9, "Smolin identity", 1, smolin},
      {10, "Bell marking heuristic search", 60, heuristic_bell},
      {11, "parallel SIC dependence witnesses", 1, dependence},
      {12, "random qubit ensembles against grid oracles", 300, grid_oracle},
      {13, "unextendibility cross-check", 10, crosscheck},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && s < c.limit_s;
    if (!pass) ++failures;
    std::printf("[%s] #%d %s (%.3f s, limit %.0f s): %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), s, c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
