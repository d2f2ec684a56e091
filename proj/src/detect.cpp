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

#include "locc/detect.hpp"

#include <algorithm>
#include <cmath>

#include "locc/error.hpp"

namespace locc {

namespace {

// Per-party factors of every member; throws for non-product members.
std::vector<std::vector<Vector>> member_factors(const Ensemble& e, const ToleranceConfig& tol) {
  std::vector<std::vector<Vector>> out;
  for (const auto& m : e.members) {
    require(m.is_pure(), "member '" + m.label + "' is mixed; exact detection needs pure products");
    std::optional<std::vector<StateVector>> f = m.product_factors;
    if (!f) f = factorize_across_parties(m.state(), e.structure, tol);
    require(f.has_value(), "member '" + m.label + "' is not a product across the parties");
    std::vector<Vector> amps;
    for (const auto& s : *f) amps.push_back(s.amplitudes());
    out.push_back(std::move(amps));
  }
  return out;
}

DetectingCertificate make_certificate(const Ensemble& e, const std::string& label,
                                      std::vector<StateVector> vectors) {
  DetectingCertificate c{label, std::move(vectors), 0.0, 0.0};
  const CertificateCheck chk = verify_certificate(e, c);
  c.max_offtarget_overlap = chk.max_offtarget_overlap;
  c.target_overlap_modulus = chk.target_overlap_modulus;
  return c;
}

}  // namespace

const char* to_string(MemberStatus s) {
  switch (s) {
    case MemberStatus::identifiable: return "identifiable";
    case MemberStatus::not_identifiable: return "not_identifiable";
    case MemberStatus::unknown: return "unknown";
  }
  return "?";
}

const char* to_string(Overall o) {
  switch (o) {
    case Overall::distinguishable: return "distinguishable";
    case Overall::indistinguishable: return "indistinguishable";
    case Overall::undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(BranchFailure f) {
  return f == BranchFailure::empty_nullspace ? "empty_nullspace" : "target_killed_on_party";
}

const char* to_string(HeuristicVerdict v) {
  return v == HeuristicVerdict::found ? "found" : "not_found";
}

StateVector detector_state(const PartyStructure& structure, const DetectingCertificate& c) {
  return assemble_product(structure, c.per_party_vectors);
}

CertificateCheck verify_certificate(const Ensemble& e, const DetectingCertificate& c) {
  const StateVector phi = detector_state(e.structure, c);
  const double norm = phi.norm();
  require(norm > 0.0, "detector is the zero vector");
  CertificateCheck chk;
  bool target_seen = false;
  for (const auto& m : e.members) {
    const double ov = std::abs(hermitian_inner(m.state(), phi)) / (norm * m.state().norm());
    if (m.label == c.target_label) {
      chk.target_overlap_modulus = ov;
      target_seen = true;
    } else {
      chk.max_offtarget_overlap = std::max(chk.max_offtarget_overlap, ov);
    }
  }
  chk.ok = target_seen && chk.max_offtarget_overlap <= kOfftargetBound &&
           chk.target_overlap_modulus >= kTargetFloor;
  return chk;
}

std::vector<int> branch_assignment(std::uint64_t code, int num_parties, int num_constraints) {
  std::vector<int> out(num_constraints);
  for (int j = num_constraints; j-- > 0;) {
    out[j] = static_cast<int>(code % static_cast<std::uint64_t>(num_parties));
    code /= static_cast<std::uint64_t>(num_parties);
  }
  return out;
}

std::uint64_t exact_branch_count(const Ensemble& e, std::uint64_t cap) {
  const auto k = static_cast<std::uint64_t>(e.structure.num_parties());
  std::uint64_t count = 1;
  for (std::size_t j = 1; j < e.size(); ++j) {
    if (count > cap / k)
      fail(ErrorKind::cap_exceeded,
           std::to_string(k) + "^" + std::to_string(e.size() - 1) +
               " branches exceed the branch cap of " + std::to_string(cap));
    count *= k;
  }
  if (count > cap)
    fail(ErrorKind::cap_exceeded, std::to_string(count) +
                                      " branches exceed the branch cap of " + std::to_string(cap));
  return count;
}

ExactDetectResult exact_product_detect(const Ensemble& e, std::string_view target,
                                       const DetectConfig& cfg) {
  cfg.tol.validate();
  const std::size_t t = e.index_of(target);
  const auto factors = member_factors(e, cfg.tol);
  const int parties = e.structure.num_parties();
  std::vector<std::size_t> constraints;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (j != t) constraints.push_back(j);
  const int nc = static_cast<int>(constraints.size());
  const std::uint64_t count = exact_branch_count(e, cfg.branch_cap);

  ExactInfeasibilityReport report;
  report.target_label = std::string(target);
  report.num_parties = parties;
  report.branch_count = count;
  for (std::size_t j : constraints) report.constraint_labels.push_back(e.members[j].label);
  report.per_branch.reserve(static_cast<std::size_t>(count));

  ExactDetectResult result;
  for (std::uint64_t code = 0; code < count; ++code) {
    ++result.branches_examined;
    const auto assign = branch_assignment(code, parties, nc);
    std::vector<StateVector> vectors;
    std::optional<BranchRecord> failure;
    for (int p = 0; p < parties && !failure; ++p) {
      const auto dp = static_cast<Eigen::Index>(e.structure.party_dim(p));
      std::vector<const Vector*> cols;
      for (int j = 0; j < nc; ++j)
        if (assign[j] == p) cols.push_back(&factors[constraints[j]][p]);
      Matrix a(dp, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = *cols[c];
      const Matrix q = orthocomplement_basis(a, cfg.tol.rank_rel_tol);
      if (q.cols() == 0) {
        failure = BranchRecord{code, BranchFailure::empty_nullspace, p};
        break;
      }
      const Vector& tp = factors[t][p];
      const Vector proj = q * (q.adjoint() * tp);
      if (proj.norm() <= cfg.tol.orth_tol * tp.norm()) {
        failure = BranchRecord{code, BranchFailure::target_killed_on_party, p};
        break;
      }
      vectors.emplace_back(e.structure.local_dims(p), proj / proj.norm());
    }
    if (!failure) {
      DetectingCertificate c = make_certificate(e, report.target_label, std::move(vectors));
      if (c.max_offtarget_overlap <= kOfftargetBound && c.target_overlap_modulus >= kTargetFloor) {
        result.certificate = std::move(c);
        return result;
      }
      // Target overlap survives but sits below the certificate floor.
      failure = BranchRecord{code, BranchFailure::target_killed_on_party, 0};
    }
    report.per_branch.push_back(*failure);
  }
  result.infeasible = std::move(report);
  return result;
}

std::vector<DetectingCertificate> compositional_detect(
    const DerivedMarkingSet& d, const std::map<std::string, DetectingCertificate>& base) {
  const int parties = d.base.structure.num_parties();
  std::vector<DetectingCertificate> out;
  out.reserve(d.tuples.size());
  for (std::size_t k = 0; k < d.tuples.size(); ++k) {
    const Tuple& t = d.tuples[k];
    std::vector<const DetectingCertificate*> slots;
    for (int i : t) {
      auto it = base.find(d.base.members[i].label);
      require(it != base.end(), "no base certificate for member '" + d.base.members[i].label + "'");
      slots.push_back(&it->second);
    }
    std::vector<StateVector> vectors;
    for (int p = 0; p < parties; ++p) {
      std::vector<StateVector> per_slot;
      for (const auto* c : slots) per_slot.push_back(c->per_party_vectors.at(p));
      vectors.push_back(tensor_product(per_slot));
    }
    DetectingCertificate c = make_certificate(d.derived, d.derived.members[k].label, std::move(vectors));
    require(c.max_offtarget_overlap <= kOfftargetBound && c.target_overlap_modulus >= kTargetFloor,
            "composed detector for '" + c.target_label + "' failed re-verification",
            ErrorKind::internal);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

Overall summarize(const std::vector<MemberVerdict>& per_state) {
  bool all = !per_state.empty();
  for (const auto& v : per_state) {
    if (v.status == MemberStatus::not_identifiable) return Overall::indistinguishable;
    all = all && v.status == MemberStatus::identifiable;
  }
  return all ? Overall::distinguishable : Overall::undetermined;
}

bool products_available(const Ensemble& e, const ToleranceConfig& tol) {
  return std::all_of(e.members.begin(), e.members.end(), [&](const EnsembleMember& m) {
    return m.is_pure() && (m.product_factors || is_fully_product(m.state(), e.structure, tol));
  });
}

std::vector<MemberVerdict> exact_all(const Ensemble& e, const DetectConfig& cfg) {
  std::vector<MemberVerdict> out;
  for (const auto& m : e.members) {
    ExactDetectResult r = exact_product_detect(e, m.label, cfg);
    MemberVerdict v{m.label, MemberStatus::unknown, std::nullopt, std::nullopt, std::nullopt};
    if (r.feasible()) {
      v.status = MemberStatus::identifiable;
      v.certificate = std::move(r.certificate);
    } else {
      v.status = MemberStatus::not_identifiable;
      v.infeasible = std::move(r.infeasible);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MemberVerdict> heuristic_all(const Ensemble& e, const DetectConfig& cfg) {
  std::vector<MemberVerdict> out;
  for (const auto& m : e.members) {
    HeuristicSearchReport r = heuristic_detect(e, m.label, cfg.restarts, cfg.seed);
    MemberVerdict v{m.label, MemberStatus::unknown, std::nullopt, std::nullopt, std::nullopt};
    if (r.verdict == HeuristicVerdict::found) {
      v.status = MemberStatus::identifiable;
      v.certificate = r.certificate;
    }
    v.heuristic = std::move(r);
    out.push_back(std::move(v));
  }
  return out;
}

CLSDVerdict decide(const Ensemble& e, const DetectConfig& cfg) {
  CLSDVerdict v;
  for (const auto& m : e.members)
    require(m.is_pure(), "member '" + m.label + "' is mixed; verdicts need pure members");
  const auto states = e.states();
  v.independence = check_linear_independence(states, cfg.tol);
  if (!v.independence.independent) {
    v.method = "linearly_dependent";
    v.overall = Overall::indistinguishable;
    return v;
  }
  if (products_available(e, cfg.tol)) {
    exact_branch_count(e, cfg.branch_cap);  // throws cap_exceeded
    v.method = "exact_product";
    v.per_state = exact_all(e, cfg);
    v.overall = summarize(v.per_state);
    return v;
  }
  if (e.structure.num_parties() == 2) {
    v.method = "heuristic";
    v.per_state = heuristic_all(e, cfg);
    v.overall = summarize(v.per_state);
    return v;
  }
  v.method = "unsupported";
  for (const auto& m : e.members)
    v.per_state.push_back({m.label, MemberStatus::unknown, std::nullopt, std::nullopt, std::nullopt});
  v.overall = Overall::undetermined;
  return v;
}

}  // namespace

CLSDVerdict clsd_verdict(const Ensemble& e, const DetectConfig& cfg) {
  cfg.tol.validate();
  require(!e.members.empty(), "ensemble has no members");
  return decide(e, cfg);
}

CLSDVerdict clsm_verdict(const Ensemble& e, int m, const DetectConfig& cfg) {
  cfg.tol.validate();
  const DerivedMarkingSet d = derive_marking_set(e, m);
  const auto derived_states = d.derived.states();

  CLSDVerdict v;
  v.independence = check_linear_independence(derived_states, cfg.tol);
  if (!v.independence.independent) {
    v.method = "linearly_dependent";
    v.overall = Overall::indistinguishable;
    return v;
  }
  if (m > 1) {
    const CLSDVerdict base = clsd_verdict(e, cfg);
    if (base.overall == Overall::distinguishable) {
      std::map<std::string, DetectingCertificate> certs;
      for (const auto& s : base.per_state) certs.emplace(s.label, *s.certificate);
      const auto composed = compositional_detect(d, certs);
      v.method = "compositional";
      for (std::size_t k = 0; k < composed.size(); ++k)
        v.per_state.push_back({d.derived.members[k].label, MemberStatus::identifiable, composed[k],
                               std::nullopt, std::nullopt});
      v.overall = Overall::distinguishable;
      return v;
    }
  }
  CLSDVerdict derived = decide(d.derived, cfg);
  derived.independence = v.independence;
  return derived;
}

}  // namespace locc
