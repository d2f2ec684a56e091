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

#include "locc/commands.hpp"

#include <algorithm>

#include "locc/error.hpp"
#include "locc/marking.hpp"

namespace locc {

using nlohmann::json;

namespace {

constexpr std::uint64_t kMaxListedBranches = 4096;

bool all_product(const Ensemble& e, const ToleranceConfig& tol) {
  return std::all_of(e.members.begin(), e.members.end(), [&](const EnsembleMember& m) {
    return m.is_pure() && (m.product_factors || is_fully_product(m.state(), e.structure, tol));
  });
}

json independence_to_json(const IndependenceVerdict& v) {
  return {{"independent", v.independent}, {"rank", v.rank}, {"count", v.count}};
}

std::string assignment_string(std::uint64_t code, int parties, int constraints) {
  std::string s;
  for (int p : branch_assignment(code, parties, constraints)) s += std::to_string(p);
  return s;
}

json exact_to_json(const ExactDetectResult& r) {
  json out;
  out["method"] = "exact_product";
  out["branches_examined"] = r.branches_examined;
  if (r.feasible()) {
    out["feasible"] = true;
    out["certificate"] = certificate_to_json(*r.certificate);
  } else {
    out["feasible"] = false;
    out["infeasibility"] = infeasibility_to_json(*r.infeasible);
  }
  return out;
}

// Why no protocol exists, pointing at the evidence.
std::string no_protocol_reason(const CLSDVerdict& v, int m) {
  const std::string where = m == 1 ? "the ensemble" : "the " + std::to_string(m) + "-fold marking set";
  if (v.method == "linearly_dependent")
    return where + " is linearly dependent (rank " + std::to_string(v.independence.rank) + " of " +
           std::to_string(v.independence.count) + "), so no conclusive protocol exists";
  for (const auto& s : v.per_state)
    if (s.status == MemberStatus::not_identifiable && s.infeasible)
      return "member '" + s.label + "' of " + where +
             " has no product detecting state: all " +
             std::to_string(s.infeasible->branch_count) +
             " branches fail (run `detect --m " + std::to_string(m) + " --target \"" + s.label +
             "\"` for the certificate)";
  for (const auto& s : v.per_state)
    if (s.status != MemberStatus::identifiable)
      return "no product detecting state was found for member '" + s.label + "' of " + where +
             " (verdict " + to_string(v.overall) + ", method " + v.method + ")";
  return "no protocol construction is available for " + where;
}

}  // namespace

json report_header(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

json ensemble_summary(const Ensemble& e) {
  json out;
  out["name"] = e.name;
  out["members"] = e.size();
  out["party_dims"] = e.structure.party_dims();
  out["factor_dims"] = e.structure.factor_dims;
  out["factor_assignment"] = e.structure.factor_assignment;
  out["all_pure"] = e.all_pure();
  json labels = json::array();
  for (const auto& m : e.members) labels.push_back(m.label);
  out["labels"] = std::move(labels);
  if (e.derived_from) out["derived_from"] = {{"base", e.derived_from->base}, {"m", e.derived_from->m}};
  return out;
}

json certificate_to_json(const DetectingCertificate& c) {
  json vecs = json::array();
  for (const auto& v : c.per_party_vectors) vecs.push_back(state_to_json(v));
  return {{"target", c.target_label},
          {"per_party_vectors", std::move(vecs)},
          {"max_offtarget_overlap", c.max_offtarget_overlap},
          {"target_overlap_modulus", c.target_overlap_modulus}};
}

json infeasibility_to_json(const ExactInfeasibilityReport& r) {
  json out;
  out["target"] = r.target_label;
  out["parties"] = r.num_parties;
  out["constraints"] = r.constraint_labels;
  out["branch_count"] = r.branch_count;
  out["branches_failed"] = r.per_branch.size();
  std::map<std::string, std::uint64_t> counts;
  for (const auto& b : r.per_branch)
    ++counts[std::string(to_string(b.failure)) + ":" + std::to_string(b.party)];
  out["failure_counts"] = counts;
  if (r.branch_count <= kMaxListedBranches) {
    json list = json::array();
    const int nc = static_cast<int>(r.constraint_labels.size());
    for (const auto& b : r.per_branch)
      list.push_back({{"code", b.code},
                      {"assignment", assignment_string(b.code, r.num_parties, nc)},
                      {"failure", to_string(b.failure)},
                      {"party", b.party}});
    out["branches"] = std::move(list);
  }
  return out;
}

json heuristic_to_json(const HeuristicSearchReport& r) {
  json out;
  out["method"] = "heuristic";
  out["target"] = r.target_label;
  out["restarts"] = r.restarts;
  out["seed"] = r.seed;
  out["verdict"] = to_string(r.verdict);
  out["best_restart"] = r.best_restart;
  out["best_target_overlap"] = r.best_target_overlap;
  out["best_offtarget_residual"] = r.best_offtarget_residual;
  out["best_ratio"] = std::isfinite(r.best_ratio) ? json(r.best_ratio) : json(nullptr);
  out["note"] = "not_found is search evidence, not a proof of nonexistence";
  if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  return out;
}

json verdict_to_json(const CLSDVerdict& v) {
  json out;
  out["overall"] = to_string(v.overall);
  out["method"] = v.method;
  out["independence"] = independence_to_json(v.independence);
  json members = json::array();
  for (const auto& s : v.per_state) {
    json jm{{"label", s.label}, {"status", to_string(s.status)}};
    if (s.certificate) jm["certificate"] = certificate_to_json(*s.certificate);
    if (s.infeasible) jm["infeasibility"] = infeasibility_to_json(*s.infeasible);
    if (s.heuristic) jm["heuristic"] = heuristic_to_json(*s.heuristic);
    members.push_back(std::move(jm));
  }
  out["members"] = std::move(members);
  return out;
}

json witness_to_json(const PartitionWitness& w) {
  json out{{"set_a", w.set_a_labels}, {"set_b", w.set_b_labels}, {"r_a", w.r_a}, {"r_b", w.r_b}};
  if (w.extension_state) out["extension_state"] = state_to_json(*w.extension_state);
  return out;
}

json classification_to_json(const UBClassification& c) {
  json out;
  out["decidable"] = c.decidable;
  if (!c.decidable) out["reason"] = c.reason;
  out["method"] = c.method;
  out["partition_convention"] = "set_a is annihilated on Alice's side, set_b on Bob's";
  out["flags"] = {{"is_ub", c.is_ub},     {"is_gub", c.is_gub},
                  {"is_upb", c.is_upb},   {"is_gupb", c.is_gupb},
                  {"spans_full_space", c.spans_full_space}};
  out["complement_dim"] = c.complement_dim;
  if (c.extension) out["extension"] = witness_to_json(*c.extension);
  json subs = json::array();
  for (const auto& s : c.maximal_subset_reports) {
    json js{{"removed", s.removed_label}, {"decided", s.decided}, {"method", s.method}};
    if (s.decided) js["extendible"] = s.extendible;
    if (s.witness) js["witness"] = witness_to_json(*s.witness);
    if (s.complement_vector) js["complement_vector"] = state_to_json(*s.complement_vector);
    subs.push_back(std::move(js));
  }
  out["maximal_subsets"] = std::move(subs);
  return out;
}

json cmd_ensembles() {
  json out = report_header("ensembles");
  json list = json::array();
  for (auto name : named_ensemble_names()) list.push_back(ensemble_summary(build_named(name)));
  out["ensembles"] = std::move(list);
  return out;
}

json cmd_analyze(const Ensemble& e, std::optional<int> m, const DetectConfig& cfg) {
  json out = report_header("analyze");
  out["ensemble"] = ensemble_summary(e);
  if (!e.all_pure()) {
    out["note"] =
        "mixed members: independence and detection apply to pure ensembles; use `mark` for the "
        "mixed-state marking protocols";
    return out;
  }
  const auto states = e.states();
  out["independence"] = independence_to_json(check_linear_independence(states, cfg.tol));
  out["all_product"] = all_product(e, cfg.tol);
  out["clsd"] = verdict_to_json(clsd_verdict(e, cfg));
  if (m) {
    json clsm = verdict_to_json(clsm_verdict(e, *m, cfg));
    clsm["m"] = *m;
    out["clsm"] = std::move(clsm);
  }
  return out;
}

json cmd_classify(const Ensemble& e, const DetectConfig& cfg) {
  const UBClassification c = classify_unextendible_basis(e, cfg.tol);
  if (!c.decidable) fail(ErrorKind::undecidable, "undecidable with exact methods: " + c.reason);
  json out = report_header("classify");
  out["ensemble"] = ensemble_summary(e);
  out["classification"] = classification_to_json(c);
  return out;
}

DetectMethod detect_method_from_string(std::string_view s) {
  if (s == "auto") return DetectMethod::automatic;
  if (s == "exact") return DetectMethod::exact;
  if (s == "heuristic") return DetectMethod::heuristic;
  fail(ErrorKind::invalid_input, "unknown method '" + std::string(s) + "' (auto, exact, heuristic)");
}

json cmd_detect(const Ensemble& base, std::optional<std::string> target, std::optional<int> m,
                DetectMethod method, const DetectConfig& cfg) {
  cfg.tol.validate();
  const Ensemble e = m ? derive_marking_set(base, *m).derived : base;
  require(e.all_pure(), "detection needs pure members");
  std::vector<std::string> targets;
  if (target) {
    e.index_of(*target);
    targets.push_back(*target);
  } else {
    for (const auto& mem : e.members) targets.push_back(mem.label);
  }
  if (method == DetectMethod::automatic)
    method = all_product(e, cfg.tol) ? DetectMethod::exact : DetectMethod::heuristic;

  json out = report_header("detect");
  out["ensemble"] = ensemble_summary(e);
  json results = json::array();
  for (const auto& t : targets) {
    if (method == DetectMethod::exact)
      results.push_back(exact_to_json(exact_product_detect(e, t, cfg)));
    else
      results.push_back(heuristic_to_json(heuristic_detect(e, t, cfg.restarts, cfg.seed)));
  }
  out["results"] = std::move(results);
  return out;
}

json cmd_mark(const Ensemble& e, const MarkOptions& opts, const DetectConfig& cfg) {
  cfg.tol.validate();
  json out = report_header("mark");
  out["ensemble"] = ensemble_summary(e);
  out["m"] = opts.m;

  ProtocolPtr proto;
  std::optional<HypothesisSet> hs;
  if (!e.all_pure()) {
    const bool two_slot = opts.m == 2 && e.size() == 2;
    if (e.name == "yu" && two_slot) {
      proto = yu_marking(e.structure.party_dim(0), opts.mode);
      out["protocol"] = "yu_marking";
      out["mode"] = to_string(opts.mode);
    } else if (e.name == "xb_from_upb" && two_slot) {
      proto = upb_marking();
      out["protocol"] = "upb_marking";
    } else {
      fail(ErrorKind::no_protocol,
           "no marking protocol is available for the mixed ensemble '" + e.name + "' at m = " +
               std::to_string(opts.m) + " (shipped: yu and xb_from_upb at m = 2)");
    }
    hs = mixed_marking_hypotheses(e, opts.m);
  } else {
    const DerivedMarkingSet d = derive_marking_set(e, opts.m);
    const CLSDVerdict v = clsm_verdict(e, opts.m, cfg);
    if (v.overall != Overall::distinguishable) fail(ErrorKind::no_protocol, no_protocol_reason(v, opts.m));
    std::map<std::string, DetectingCertificate> certs;
    if (v.method == "compositional") {
      for (const auto& s : clsd_verdict(e, cfg).per_state) certs.emplace(s.label, *s.certificate);
      proto = build_sequential_marking_protocol(d, certs);
      out["protocol"] = "sequential_slot_detectors";
    } else {
      for (const auto& s : v.per_state) certs.emplace(s.label, *s.certificate);
      proto = build_sequential_marking_protocol(derive_marking_set(d.derived, 1), certs);
      out["protocol"] = "joint_slot_detectors";
    }
    hs = HypothesisSet::from_marking(d);
  }

  const SimulationReport rep = simulate(*proto, *hs, cfg.tol);
  double min_success = 1.0;
  for (const auto& h : rep.per_hypothesis) min_success = std::min(min_success, h.success);
  out["hypotheses"] = rep.per_hypothesis.size();
  out["zero_error"] = rep.zero_error;
  out["min_success"] = min_success;
  out["simulation"] = simulation_to_json(rep);
  if (opts.include_tree) out["protocol_tree"] = protocol_to_json(*proto);
  return out;
}

}  // namespace locc
