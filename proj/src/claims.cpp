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

#include "locc/claims.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <set>

#include "locc/commands.hpp"
#include "locc/error.hpp"
#include "locc/marking.hpp"
#include "locc/protocol.hpp"
#include "locc/upb.hpp"

namespace locc {

using nlohmann::json;

namespace {

constexpr double kProbTol = 1e-9;
constexpr double kZeroError = 1e-12;

ClaimStatus status_of(bool ok) { return ok ? ClaimStatus::pass : ClaimStatus::fail; }

using LabelSet = std::set<std::string>;

// Two-digit index pairs "ij" to derived labels "gammai,gammaj".
std::set<LabelSet> chi_sets(std::initializer_list<std::initializer_list<int>> sets) {
  std::set<LabelSet> out;
  for (const auto& s : sets) {
    LabelSet ls;
    for (int ij : s)
      ls.insert("gamma" + std::to_string(ij / 10) + ",gamma" + std::to_string(ij % 10));
    out.insert(ls);
  }
  return out;
}

// Listed partitions, as printed.
const std::set<LabelSet>& full_size6() {
  static const auto s = chi_sets({{12, 13, 14, 21, 31, 41},
                                  {21, 23, 24, 12, 32, 42},
                                  {31, 32, 34, 13, 23, 43},
                                  {41, 42, 43, 14, 24, 34}});
  return s;
}

const std::set<LabelSet>& t_size5() {
  static const auto s = chi_sets(
      {{13, 14, 21, 31, 41}, {13, 21, 23, 24, 43}, {13, 23, 31, 32, 34}, {13, 23, 31, 32, 43},
       {13, 23, 31, 34, 43}, {13, 23, 32, 34, 43}, {13, 23, 41, 42, 43}, {13, 31, 32, 34, 43},
       {14, 21, 23, 24, 34}, {14, 24, 31, 32, 34}, {14, 24, 34, 41, 42}, {14, 24, 34, 41, 43},
       {14, 24, 34, 42, 43}, {14, 24, 41, 42, 43}, {14, 34, 41, 42, 43}, {21, 23, 24, 31, 41},
       {21, 23, 24, 32, 42}, {21, 31, 32, 34, 41}, {21, 31, 41, 42, 43}, {23, 31, 32, 34, 43},
       {24, 34, 41, 42, 43}});
  return s;
}

const std::set<LabelSet>& t_size6() {
  static const auto s = chi_sets({{13, 23, 31, 32, 34, 43}, {14, 24, 34, 41, 42, 43}});
  return s;
}

Ensemble anti_marking_set() {
  return derive_marking_set(build_named("double_sic_antiparallel"), 2).derived;
}

Ensemble anti_marking_minus_first() {
  const Ensemble full = anti_marking_set();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full.members[i].label != "gamma1,gamma2") keep.push_back(i);
  return subset(full, keep, "T");
}

struct PartitionCheck {
  json observed;
  bool ok = true;
};

PartitionCheck check_partitions(const Ensemble& e, int size, const std::set<LabelSet>& listed,
                                const ToleranceConfig& tol) {
  const auto found = enumerate_low_rank_partitions(e, Side::A, 3, size, tol);
  std::set<LabelSet> sets;
  std::set<int> r_b;
  for (const auto& w : found) {
    sets.insert(LabelSet(w.set_a_labels.begin(), w.set_a_labels.end()));
    r_b.insert(w.r_b);
  }
  PartitionCheck c;
  c.observed = {{"count", found.size()},
                {"matches_listed", sets == listed},
                {"complementary_ranks", std::vector<int>(r_b.begin(), r_b.end())}};
  c.ok = found.size() == listed.size() && sets == listed && r_b == std::set<int>{4};
  return c;
}

double min_success(const SimulationReport& r) {
  double m = 1.0;
  for (const auto& h : r.per_hypothesis) m = std::min(m, h.success);
  return m;
}

json sim_summary(const SimulationReport& r) {
  json per = json::object();
  for (const auto& h : r.per_hypothesis)
    per[h.label] = {{"success", h.success}, {"error", h.error}};
  return {{"hypotheses", r.per_hypothesis.size()},
          {"max_error", r.max_error},
          {"zero_error", r.zero_error},
          {"min_success", min_success(r)},
          {"per_hypothesis", std::move(per)}};
}

// Trine overlaps |<w_j^perp|w_k>|^2 evaluated directly from the ensemble factors.
double trine_target_success(const Ensemble& pw, int k) {
  auto factor = [&](int idx) { return pw.members[idx].product_factors->at(0).amplitudes(); };
  auto perp_overlap = [&](int j) {
    const Vector wj = factor(j);
    const Vector wk = factor(k);
    const Complex ip = -wj(1) * wk(0) + wj(0) * wk(1);  // <w_j^perp|w_k>, w^perp = (-b*, a*)
    return std::norm(ip);
  };
  return perp_overlap((k + 1) % 3) * perp_overlap((k + 2) % 3);
}

ClaimRecord claim_prop1(const DetectConfig& cfg) {
  ClaimRecord r{"prop1", "double-trine conclusive detection, per target", {}, {}, {}};
  const Ensemble pw = build_named("pw_trine");
  const HypothesisSet hs = HypothesisSet::from_ensemble(pw);
  bool ok = true;
  json obs = json::array(), exp = json::array();
  for (int k = 0; k < 3; ++k) {
    const std::string label = pw.members[k].label;
    const double want = trine_target_success(pw, k);
    const SimulationReport rep = simulate(*pw_conclusive(k), hs, cfg.tol);
    const auto& out = rep.per_hypothesis[pw.index_of(label)];
    ok = ok && rep.zero_error && rep.max_error <= kZeroError &&
         std::abs(out.success - 9.0 / 16.0) <= kProbTol && std::abs(want - 9.0 / 16.0) <= kProbTol;
    exp.push_back({{"target", label}, {"success", 9.0 / 16.0}, {"oracle_success", want}});
    obs.push_back({{"target", label}, {"success", out.success}, {"max_error", rep.max_error}});
  }
  r.expected = {{"per_target", exp}, {"max_error_at_most", kZeroError}};
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_eq1(const DetectConfig& cfg) {
  ClaimRecord r{"eq1_trine", "POVM conclusiveness condition on the double trine", {}, {}, {}};
  const Ensemble pw = build_named("pw_trine");
  bool ok = true;
  json obs = json::array();
  for (int k = 0; k < 3; ++k) {
    const Povm p = pw_conclusive_povm(k);
    const PovmReport pr = verify_povm(p, cfg.tol);
    const std::string label = pw.members[k].label;
    const ConclusiveReport cr = verify_conclusive_condition(p, pw, {{"E0", label}});
    double prob = 0.0, off = 0.0;
    for (const auto& e : cr.entries)
      if (e.effect == "E0") prob = e.probability, off = e.max_offdiagonal;
    ok = ok && pr.pass && cr.pass && std::abs(prob - 9.0 / 16.0) <= kProbTol;
    obs.push_back({{"target", label},
                   {"povm_valid", pr.pass},
                   {"conclusive", cr.pass},
                   {"probability", prob},
                   {"max_offdiagonal", off}});
  }
  r.expected = {{"conclusive", true}, {"probability", 9.0 / 16.0}};
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_prop2(const DetectConfig& cfg) {
  ClaimRecord r{"prop2", "dependence witnesses for the parallel double SIC", {}, {}, {}};
  const Ensemble e = build_named("double_sic_parallel");
  const auto states = e.states();
  const IndependenceVerdict iv = check_linear_independence(states, cfg.tol);
  const auto alpha = find_linear_dependence(states, cfg.tol);
  bool ok = !iv.independent && iv.rank == 3 && alpha.has_value();
  json obs = {{"rank", iv.rank}, {"count", iv.count}};
  json wit = json::array();
  if (alpha) {
    for (int m = 1; m <= 3; ++m) {
      const DependenceWitness w = build_dependence_witness(e, *alpha, m);
      ok = ok && w.valid && w.residual_norm <= 1e-9;
      wit.push_back({{"m", m},
                     {"terms", w.coefficients.size()},
                     {"residual_norm", w.residual_norm},
                     {"valid", w.valid}});
    }
  }
  obs["witnesses"] = wit;
  r.expected = {{"rank", 3}, {"m", {1, 2, 3}}, {"residual_at_most", 1e-9}};
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_prop3(const DetectConfig& cfg) {
  ClaimRecord r{"prop3", "independence of derived marking sets", {}, {}, {}};
  bool ok = true;
  json obs = json::array();
  for (auto name : named_ensemble_names()) {
    const Ensemble e = build_named(name);
    if (!e.all_pure()) continue;
    const auto states = e.states();
    const IndependenceVerdict base = check_linear_independence(states, cfg.tol);
    json row = {{"ensemble", std::string(name)}, {"rank", base.rank}, {"count", base.count}};
    if (name == "bell") ok = ok && base.rank == 4;
    if (name == "double_sic_parallel") ok = ok && base.rank == 3;
    if (name == "double_sic_antiparallel") ok = ok && base.rank == 4;
    if (base.independent) {
      json derived = json::array();
      const int top = std::min<int>(static_cast<int>(e.size()), 3);
      for (int m = 1; m <= top; ++m) {
        const auto ds = derive_marking_set(e, m).derived.states();
        const IndependenceVerdict v = check_linear_independence(ds, cfg.tol);
        ok = ok && v.independent;
        derived.push_back({{"m", m}, {"rank", v.rank}, {"count", v.count}});
      }
      row["derived"] = std::move(derived);
    }
    obs.push_back(std::move(row));
  }
  r.expected = {{"bell_rank", 4},
                {"double_sic_parallel_rank", 3},
                {"double_sic_antiparallel_rank", 4},
                {"derived_independent_for_m_up_to", "min(N,3)"}};
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_prop4(const DetectConfig& cfg) {
  ClaimRecord r{"prop4", "antiparallel double SIC: independent yet locally indistinguishable",
                {}, {}, {}};
  const Ensemble e = build_named("double_sic_antiparallel");
  const auto states = e.states();
  const IndependenceVerdict iv = check_linear_independence(states, cfg.tol);
  bool ok = iv.independent;
  json comps = json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    std::vector<StateVector> rest;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != i) rest.push_back(states[j]);
    const auto oc = orthocomplement(rest, e.structure.total_dim(), cfg.tol);
    const std::vector<int> left{0};
    const int sr = oc.size() == 1 ? schmidt_rank(oc[0], left, cfg.tol) : -1;
    ok = ok && oc.size() == 1 && sr == 2;
    comps.push_back({{"removed", e.members[i].label}, {"dim", oc.size()}, {"schmidt_rank", sr}});
  }
  json infeasible = json::array();
  for (const auto& m : e.members) {
    const ExactDetectResult d = exact_product_detect(e, m.label, cfg);
    ok = ok && !d.feasible();
    infeasible.push_back({{"target", m.label},
                          {"feasible", d.feasible()},
                          {"branches", d.branches_examined}});
  }
  const CLSDVerdict v = clsd_verdict(e, cfg);
  ok = ok && v.overall == Overall::indistinguishable;
  r.expected = {{"independent", true},
                {"complement_dim", 1},
                {"complement_schmidt_rank", 2},
                {"every_target_feasible", false},
                {"clsd", "indistinguishable"}};
  r.observed = {{"independent", iv.independent},
                {"complements", comps},
                {"exact_detect", infeasible},
                {"clsd", to_string(v.overall)}};
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_prop5(const DetectConfig& cfg) {
  ClaimRecord r{"prop5", "two-slot marking of the UPB-based pair", {}, {}, {}};
  const Ensemble xb = build_named("xb_from_upb");
  const SimulationReport rep = simulate(*upb_marking(), mixed_marking_hypotheses(xb, 2), cfg.tol);
  const bool ok = rep.zero_error && rep.per_hypothesis.size() == 2 && min_success(rep) > 0.0;
  r.expected = {{"zero_error", true}, {"success_positive", true}, {"hypotheses", 2}};
  r.observed = sim_summary(rep);
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_prop6(const DetectConfig& cfg) {
  ClaimRecord r{"prop6", "Bell two-slot marking set, target B1,B2 (search evidence)", {}, {}, {}};
  const Ensemble d = derive_marking_set(build_named("bell"), 2).derived;
  const HeuristicSearchReport h = heuristic_detect(d, "B1,B2", cfg.restarts, cfg.seed);
  const bool ok = h.verdict == HeuristicVerdict::not_found && h.best_offtarget_residual >= 1e-3;
  r.expected = {{"verdict", "not_found"}, {"best_offtarget_residual_at_least", 1e-3}};
  r.observed = heuristic_to_json(h);
  r.status = ok ? ClaimStatus::heuristic_pass : ClaimStatus::fail;
  return r;
}

ClaimRecord claim_thm1(const DetectConfig& cfg) {
  ClaimRecord r{"thm1", "Bennett nine-state basis: base detectors and two-slot marking", {}, {}, {}};
  const Ensemble e = build_named("bennett9");
  const CLSDVerdict v = clsd_verdict(e, cfg);
  std::map<std::string, DetectingCertificate> certs;
  for (const auto& s : v.per_state)
    if (s.certificate) certs.emplace(s.label, *s.certificate);
  bool ok = certs.size() == 9;
  double psi1_fidelity = 0.0;
  if (auto it = certs.find("psi1"); it != certs.end()) {
    const StateVector det = detector_state(e.structure, it->second);
    const StateVector ket11 = StateVector::basis({3, 3}, 4);
    psi1_fidelity = std::abs(hermitian_inner(ket11, det)) / det.norm();
  }
  ok = ok && std::abs(psi1_fidelity - 1.0) <= kProbTol;
  json sim;
  if (ok) {
    const DerivedMarkingSet d = derive_marking_set(e, 2);
    const SimulationReport rep =
        simulate(*build_sequential_marking_protocol(d, certs), HypothesisSet::from_marking(d),
                 cfg.tol);
    ok = rep.zero_error && rep.per_hypothesis.size() == 72 && min_success(rep) > 0.0;
    sim = {{"hypotheses", rep.per_hypothesis.size()},
           {"zero_error", rep.zero_error},
           {"max_error", rep.max_error},
           {"min_success", min_success(rep)}};
  }
  r.expected = {{"certificates", 9},
                {"psi1_detector_overlap_with_ket11", 1.0},
                {"marking", {{"m", 2}, {"hypotheses", 72}, {"zero_error", true}}}};
  r.observed = {{"certificates", certs.size()},
                {"psi1_detector_overlap_with_ket11", psi1_fidelity},
                {"marking", sim}};
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_thm2(const DetectConfig& cfg) {
  ClaimRecord r{"thm2", "antiparallel two-slot marking set: UPB that is not genuine", {}, {}, {}};
  const Ensemble d = anti_marking_set();
  const auto states = d.states();
  const int span = numerical_rank(states, cfg.tol);
  const ExtendibilityResult ext = find_orthogonal_product_state(d, cfg.tol);
  const UBClassification c = classify_unextendible_basis(d, cfg.tol);
  const CLSDVerdict v = clsm_verdict(build_named("double_sic_antiparallel"), 2, cfg);
  const bool ok = span == 12 && !ext.extendible && c.decidable && c.is_upb && !c.is_gupb &&
                  v.overall == Overall::indistinguishable;
  r.expected = {{"span", 12},
                {"orthogonal_product_state", nullptr},
                {"is_upb", true},
                {"is_gupb", false},
                {"clsm", "indistinguishable"}};
  r.observed = {{"span", span},
                {"orthogonal_product_state", ext.extendible ? json("found") : json(nullptr)},
                {"partitions_examined", ext.partitions_examined},
                {"is_upb", c.is_upb},
                {"is_gupb", c.is_gupb},
                {"clsm", to_string(v.overall)},
                {"clsm_method", v.method}};
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_appd(const DetectConfig& cfg) {
  ClaimRecord r{"appD_counts", "low-rank partitions of the antiparallel marking set", {}, {}, {}};
  const PartitionCheck full = check_partitions(anti_marking_set(), 6, full_size6(), cfg.tol);
  const Ensemble t = anti_marking_minus_first();
  const PartitionCheck t5 = check_partitions(t, 5, t_size5(), cfg.tol);
  const PartitionCheck t6 = check_partitions(t, 6, t_size6(), cfg.tol);
  r.expected = {{"full_size6", 4}, {"t_size5", 21}, {"t_size6", 2}, {"complementary_rank", 4}};
  r.observed = {{"full_size6", full.observed}, {"t_size5", t5.observed}, {"t_size6", t6.observed}};
  r.status = status_of(full.ok && t5.ok && t6.ok);
  return r;
}

ClaimRecord claim_thm3(const DetectConfig& cfg) {
  ClaimRecord r{"thm3", "Duan two-slot marking set, target D1,D2", {}, {}, {}};
  const Ensemble d = derive_marking_set(build_named("duan4"), 2).derived;
  const ExactDetectResult res = exact_product_detect(d, "D1,D2", cfg);
  std::size_t failed = res.infeasible ? res.infeasible->per_branch.size() : 0;
  const bool ok = !res.feasible() && res.branches_examined == 2048 && failed == 2048;
  r.expected = {{"feasible", false}, {"branches", 2048}, {"failed", 2048}};
  r.observed = {{"feasible", res.feasible()},
                {"branches", res.branches_examined},
                {"failed", failed}};
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_appe(const DetectConfig& cfg) {
  ClaimRecord r{"appE_branches", "Duan base set and its two-slot set: all branches fail", {},
                {}, {}};
  const Ensemble base = build_named("duan4");
  bool ok = true;
  json obs = json::array();
  for (const auto& m : base.members) {
    const ExactDetectResult res = exact_product_detect(base, m.label, cfg);
    ok = ok && !res.feasible() && res.branches_examined == 8;
    obs.push_back(
        {{"target", m.label}, {"feasible", res.feasible()}, {"branches", res.branches_examined}});
  }
  const Ensemble d = derive_marking_set(base, 2).derived;
  std::map<std::string, std::uint64_t> failures;
  const ExactDetectResult res = exact_product_detect(d, "D1,D2", cfg);
  if (res.infeasible)
    for (const auto& b : res.infeasible->per_branch) ++failures[to_string(b.failure)];
  ok = ok && !res.feasible() && res.branches_examined == 2048;
  r.expected = {{"base_branches", 8}, {"derived_branches", 2048}, {"feasible", false}};
  r.observed = {{"base", obs},
                {"derived", {{"target", "D1,D2"},
                             {"feasible", res.feasible()},
                             {"branches", res.branches_examined},
                             {"failure_kinds", failures}}}};
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_thm4(const DetectConfig& cfg) {
  ClaimRecord r{"thm4", "Yu pair two-slot marking", {}, {}, {}};
  bool ok = true;
  json exp = json::array(), obs = json::array();
  for (int d : {2, 3}) {
    const Ensemble yu = build_named("yu", d);
    const Matrix sigma = yu.members[yu.index_of("sigma")].density().matrix();
    // Oracle: probability that sigma shows the flagged local outcome pair.
    double strict = std::real(sigma(1, 1));
    double any = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) any += std::real(sigma(i * d + j, i * d + j));
    const HypothesisSet hs = mixed_marking_hypotheses(yu, 2);
    for (YuMode mode : {YuMode::strict01, YuMode::any_anticorrelated}) {
      const double want = mode == YuMode::strict01 ? strict : any;
      const double closed = mode == YuMode::strict01 ? 1.0 / (d * d - 1) : double(d) / (d + 1);
      const SimulationReport rep = simulate(*yu_marking(d, mode), hs, cfg.tol);
      bool row_ok = rep.zero_error && std::abs(want - closed) <= kProbTol;
      for (const auto& h : rep.per_hypothesis) row_ok = row_ok && std::abs(h.success - want) <= kProbTol;
      ok = ok && row_ok;
      exp.push_back({{"d", d}, {"mode", to_string(mode)}, {"success", closed}, {"oracle", want}});
      obs.push_back({{"d", d}, {"mode", to_string(mode)}, {"simulation", sim_summary(rep)}});
    }
  }
  r.expected = exp;
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_lemma3(const DetectConfig& cfg) {
  ClaimRecord r{"lemma3_crosscheck", "unextendibility flags agree with local distinguishability",
                {}, {}, {}};
  const std::vector<std::pair<std::string, Ensemble>> cases = {
      {"pw_trine", build_named("pw_trine")},
      {"double_sic_antiparallel", build_named("double_sic_antiparallel")},
      {"double_sic_antiparallel[m=2]", anti_marking_set()}};
  bool ok = true;
  json obs = json::array();
  for (const auto& [name, e] : cases) {
    const LemmaCrosscheck c = crosscheck_lemma_gub(e, cfg);
    ok = ok && c.checked && c.consistent;
    json row = {{"ensemble", name},         {"checked", c.checked}, {"is_ub", c.is_ub},
                {"is_gub", c.is_gub},       {"clsd", to_string(c.clsd)},
                {"clsd_method", c.clsd_method}, {"consistent", c.consistent}};
    if (!c.checked) row["skip_reason"] = c.skip_reason;
    obs.push_back(std::move(row));
  }
  r.expected = {{"consistent", true}, {"cases", 3}};
  r.observed = obs;
  r.status = status_of(ok);
  return r;
}

ClaimRecord claim_eq2(const DetectConfig&) {
  ClaimRecord r{"eq2_smolin", "Smolin state pairing identity", {}, {}, {}};
  const double res = smolin_identity_residual();
  r.expected = {{"residual_at_most", 1e-12}};
  r.observed = {{"residual", res}};
  r.status = status_of(res <= 1e-12);
  return r;
}

using ClaimFn = std::function<ClaimRecord(const DetectConfig&)>;

const std::vector<std::pair<std::string, ClaimFn>>& registry() {
  static const std::vector<std::pair<std::string, ClaimFn>> r = {
      {"prop1", claim_prop1},
      {"prop2", claim_prop2},
      {"prop3", claim_prop3},
      {"prop4", claim_prop4},
      {"prop5", claim_prop5},
      {"prop6", claim_prop6},
      {"thm1", claim_thm1},
      {"thm2", claim_thm2},
      {"thm3", claim_thm3},
      {"thm4", claim_thm4},
      {"lemma3_crosscheck", claim_lemma3},
      {"eq1_trine", claim_eq1},
      {"eq2_smolin", claim_eq2},
      {"appD_counts", claim_appd},
      {"appE_branches", claim_appe},
  };
  return r;
}

const ClaimFn& lookup(std::string_view id) {
  for (const auto& [name, fn] : registry())
    if (name == id) return fn;
  fail(ErrorKind::invalid_input, "unknown claim id '" + std::string(id) + "'");
}

}  // namespace

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::heuristic_pass: return "heuristic-pass";
  }
  return "fail";
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return ids;
}

ClaimRecord run_claim(std::string_view id, const DetectConfig& cfg) {
  cfg.tol.validate();
  return lookup(id)(cfg);
}

std::vector<ClaimRecord> run_claims(const std::vector<std::string>& ids, const DetectConfig& cfg) {
  cfg.tol.validate();
  std::vector<std::string> expanded;
  for (const auto& id : ids) {
    if (id == "all") {
      expanded.insert(expanded.end(), claim_ids().begin(), claim_ids().end());
    } else {
      lookup(id);
      expanded.push_back(id);
    }
  }
  std::vector<std::future<ClaimRecord>> jobs;
  for (const auto& id : expanded)
    jobs.push_back(std::async(std::launch::async, [id, cfg] { return lookup(id)(cfg); }));
  std::vector<ClaimRecord> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

json claim_to_json(const ClaimRecord& r) {
  return {{"id", r.id},
          {"title", r.title},
          {"status", to_string(r.status)},
          {"expected", r.expected},
          {"observed", r.observed}};
}

json cmd_reproduce(const std::vector<std::string>& ids, const DetectConfig& cfg) {
  const auto records = run_claims(ids, cfg);
  json out = report_header("reproduce");
  out["config"] = {{"seed", cfg.seed}, {"restarts", cfg.restarts}, {"branch_cap", cfg.branch_cap}};
  json list = json::array();
  bool all_pass = true;
  for (const auto& r : records) {
    all_pass = all_pass && r.status != ClaimStatus::fail;
    list.push_back(claim_to_json(r));
  }
  out["claims"] = std::move(list);
  out["all_pass"] = all_pass;
  return out;
}

}  // namespace locc
