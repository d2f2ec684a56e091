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

#include "locc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "locc/error.hpp"

namespace locc {

using nlohmann::json;

namespace {

constexpr double kPrune = 1e-15;
constexpr double kZeroError = 1e-12;

// Embeds a local operator on `subsystem` into the full space.
Matrix embed(const Matrix& local, const Dims& dims, const std::vector<int>& subsystem) {
  std::vector<int> perm(subsystem.begin(), subsystem.end());
  for (int f = 0; f < static_cast<int>(dims.size()); ++f)
    if (!std::binary_search(subsystem.begin(), subsystem.end(), f)) perm.push_back(f);
  const auto map = permuted_index_map(dims, perm);
  const Eigen::Index ds = local.rows();
  const auto n = static_cast<Eigen::Index>(map.size());
  const Eigen::Index r = n / ds;
  Matrix full = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < ds; ++i)
    for (Eigen::Index j = 0; j < ds; ++j) {
      const Complex v = local(i, j);
      if (v == Complex(0.0)) continue;
      for (Eigen::Index a = 0; a < r; ++a)
        full(static_cast<Eigen::Index>(map[i * r + a]), static_cast<Eigen::Index>(map[j * r + a])) = v;
    }
  return full;
}

struct CompiledNode {
  std::vector<Matrix> kraus;
};

class Simulator {
 public:
  Simulator(const HypothesisSet& hs, const ToleranceConfig& tol) : hs_(hs), tol_(tol) {
    for (const auto& h : hs.hypotheses) labels_.insert(h.label);
  }

  void check(const ProtocolNode& node) {
    if (compiled_.count(&node)) return;
    const auto& s = hs_.structure;
    const Povm& p = node.povm;
    require(node.acting_party >= 0 && node.acting_party < s.num_parties(),
            "protocol node names a nonexistent party");
    require(!p.subsystem.empty(), "protocol node acts on no subsystem");
    require(std::is_sorted(p.subsystem.begin(), p.subsystem.end()) &&
                std::adjacent_find(p.subsystem.begin(), p.subsystem.end()) == p.subsystem.end(),
            "protocol node subsystem must be strictly increasing");
    require(p.local_dims.size() == p.subsystem.size(), "subsystem dims do not match the subsystem");
    for (std::size_t i = 0; i < p.subsystem.size(); ++i) {
      const int f = p.subsystem[i];
      require(f >= 0 && f < s.num_factors(), "protocol node subsystem factor out of range");
      require(s.factor_assignment[f] == node.acting_party,
              "protocol node acts on factor " + std::to_string(f) + " not owned by party " +
                  std::to_string(node.acting_party));
      require(s.factor_dims[f] == p.local_dims[i], "protocol node subsystem dims disagree");
    }
    require(!p.effects.empty(), "protocol node has no effects");
    require(p.effects.size() == node.branches.size(), "every outcome needs exactly one branch");
    const auto ds = static_cast<Eigen::Index>(total_dim(p.local_dims));
    CompiledNode c;
    for (const auto& [label, e] : p.effects) {
      require(e.rows() == ds && e.cols() == ds, "effect '" + label + "' has the wrong size");
      c.kraus.push_back(embed(psd_sqrt(e), s.factor_dims, p.subsystem));
    }
    const PovmReport rep = verify_povm(p, tol_);
    require(rep.pass, "protocol node POVM is invalid (completeness residual " +
                          std::to_string(rep.completeness_residual) + ", min eigenvalue " +
                          std::to_string(rep.min_eigenvalue) + ")");
    compiled_.emplace(&node, std::move(c));
    for (const auto& b : node.branches) {
      if (const auto* child = std::get_if<ProtocolPtr>(&b)) {
        require(*child != nullptr, "protocol branch points to no node");
        check(**child);
      } else {
        const auto& d = std::get<Declaration>(b);
        if (d.answer)
          require(labels_.count(*d.answer) > 0,
                  "declaration '" + *d.answer + "' is not a hypothesis label");
      }
    }
  }

  template <class State>
  void walk(const ProtocolNode& node, const State& state, HypothesisOutcome& out) const {
    const CompiledNode& c = compiled_.at(&node);
    for (std::size_t k = 0; k < c.kraus.size(); ++k) {
      State next = apply(c.kraus[k], state);
      const double p = weight(next);
      if (p <= kPrune) continue;
      const Branch& b = node.branches[k];
      if (const auto* child = std::get_if<ProtocolPtr>(&b)) {
        walk(**child, next, out);
      } else {
        const auto& d = std::get<Declaration>(b);
        out.distribution[d.answer ? *d.answer : kInconclusive] += p;
      }
    }
  }

 private:
  static Vector apply(const Matrix& k, const Vector& v) { return k * v; }
  static Matrix apply(const Matrix& k, const Matrix& rho) { return k * rho * k.adjoint(); }
  static double weight(const Vector& v) { return v.squaredNorm(); }
  static double weight(const Matrix& rho) { return rho.trace().real(); }

  const HypothesisSet& hs_;
  ToleranceConfig tol_;
  std::set<std::string> labels_;
  std::map<const ProtocolNode*, CompiledNode> compiled_;
};

}  // namespace

PovmReport verify_povm(const Povm& p, const ToleranceConfig& tol) {
  PovmReport r;
  const auto ds = static_cast<Eigen::Index>(total_dim(p.local_dims));
  Matrix sum = Matrix::Zero(ds, ds);
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  bool shapes = !p.effects.empty();
  bool hermitian = true;
  for (const auto& [label, e] : p.effects) {
    if (e.rows() != ds || e.cols() != ds) {
      shapes = false;
      continue;
    }
    sum += e;
    r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue((e + e.adjoint()) / 2.0));
    hermitian = hermitian && max_abs_diff(e, e.adjoint()) <= tol.identity_tol;
  }
  r.completeness_residual = max_abs_diff(sum, Matrix::Identity(ds, ds));
  r.pass = shapes && hermitian && r.min_eigenvalue >= -1e-9 &&
           r.completeness_residual <= tol.identity_tol;
  return r;
}

ConclusiveReport verify_conclusive_condition(const Povm& p, const Ensemble& e,
                                             const std::map<std::string, std::string>& answer_map) {
  const auto n = static_cast<Eigen::Index>(e.structure.total_dim());
  require(static_cast<Eigen::Index>(total_dim(p.local_dims)) == n,
          "POVM does not act on the full space", ErrorKind::dimension_mismatch);
  std::map<std::string, const Matrix*> effects;
  for (const auto& [label, m] : p.effects) effects[label] = &m;
  ConclusiveReport r;
  r.pass = !answer_map.empty();
  for (const auto& [effect, member] : answer_map) {
    auto it = effects.find(effect);
    require(it != effects.end(), "answer map names unknown effect '" + effect + "'");
    e.index_of(member);
    ConclusiveEntry entry{effect, member, 0.0, 0.0};
    for (const auto& m : e.members) {
      const double t = (m.density().matrix() * *it->second).trace().real();
      if (m.label == member)
        entry.probability = t;
      else
        entry.max_offdiagonal = std::max(entry.max_offdiagonal, std::abs(t));
    }
    r.pass = r.pass && entry.max_offdiagonal <= kZeroError && entry.probability > kZeroError;
    r.entries.push_back(entry);
  }
  return r;
}

HypothesisSet HypothesisSet::from_ensemble(const Ensemble& e) {
  HypothesisSet hs{e.structure, {}};
  for (const auto& m : e.members) {
    if (m.is_pure())
      hs.hypotheses.push_back({m.label, m.state()});
    else
      hs.hypotheses.push_back({m.label, std::get<Operator>(m.body)});
  }
  return hs;
}

HypothesisSet HypothesisSet::from_marking(const DerivedMarkingSet& d) {
  return from_ensemble(d.derived);
}

HypothesisSet mixed_marking_hypotheses(const Ensemble& e, int m) {
  require(m >= 1 && m <= static_cast<int>(e.size()), "m must lie in 1.." + std::to_string(e.size()));
  HypothesisSet hs{marking_structure(e.structure, m), {}};
  const auto perm = marking_permutation(e.structure, m);
  for (const Tuple& t : ordered_selections(static_cast<int>(e.size()), m)) {
    Operator acc = e.members[t[0]].density();
    for (std::size_t s = 1; s < t.size(); ++s) acc = tensor_product(acc, e.members[t[s]].density());
    hs.hypotheses.push_back({tuple_label(e, t), regroup_factors(acc, perm)});
  }
  return hs;
}

SimulationReport simulate(const ProtocolNode& root, const HypothesisSet& hs,
                          const ToleranceConfig& tol) {
  require(!hs.hypotheses.empty(), "no hypotheses to simulate");
  Simulator sim(hs, tol);
  sim.check(root);
  SimulationReport rep;
  for (const auto& h : hs.hypotheses) {
    HypothesisOutcome out;
    out.label = h.label;
    if (const auto* s = std::get_if<StateVector>(&h.state)) {
      require(s->dims() == hs.structure.factor_dims, "hypothesis '" + h.label + "' has the wrong dims");
      sim.walk(root, Vector(s->amplitudes() / s->norm()), out);
    } else {
      const auto& op = std::get<Operator>(h.state);
      require(op.dims() == hs.structure.factor_dims, "hypothesis '" + h.label + "' has the wrong dims");
      sim.walk(root, op.matrix(), out);
    }
    for (const auto& [decl, p] : out.distribution) {
      out.total += p;
      if (decl == h.label)
        out.success += p;
      else if (decl == kInconclusive)
        out.inconclusive += p;
      else
        out.error += p;
    }
    rep.max_error = std::max(rep.max_error, out.error);
    rep.max_conservation_defect = std::max(rep.max_conservation_defect, std::abs(out.total - 1.0));
    rep.per_hypothesis.push_back(std::move(out));
  }
  rep.zero_error = rep.max_error <= kZeroError;
  return rep;
}

ProtocolPtr build_sequential_marking_protocol(
    const DerivedMarkingSet& d, const std::map<std::string, DetectingCertificate>& base) {
  const Ensemble& e = d.base;
  const int parties = e.structure.num_parties();
  const int n = static_cast<int>(e.size());
  const int m = d.m;
  std::vector<const DetectingCertificate*> certs;
  for (const auto& mem : e.members) {
    auto it = base.find(mem.label);
    if (it == base.end())
      fail(ErrorKind::no_protocol, "no detecting certificate for member '" + mem.label + "'");
    require(static_cast<int>(it->second.per_party_vectors.size()) == parties,
            "certificate for '" + mem.label + "' has the wrong number of parties");
    certs.push_back(&it->second);
  }

  // Derived factor indices of (party, slot).
  std::vector<int> offset(parties, 0);
  for (int p = 1; p < parties; ++p)
    offset[p] = offset[p - 1] + static_cast<int>(e.structure.factors_of(p - 1).size()) * m;
  auto slot_factors = [&](int p, int s) {
    const int nf = static_cast<int>(e.structure.factors_of(p).size());
    std::vector<int> out;
    for (int f = 0; f < nf; ++f) out.push_back(offset[p] + s * nf + f);
    return out;
  };

  const auto d0 = static_cast<Eigen::Index>(e.structure.party_dim(0));
  Matrix total = Matrix::Zero(d0, d0);
  for (const auto* c : certs) {
    const Vector& a = c->per_party_vectors[0].amplitudes();
    total += a * a.adjoint();
  }
  const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(total).eigenvalues().maxCoeff();
  const double scale = 1.0 / lmax;

  const Declaration inconclusive{};
  std::function<ProtocolPtr(int, const Tuple&)> make_slot;

  auto identified = [&](const Tuple& prefix) -> Branch {
    if (static_cast<int>(prefix.size()) == m) return Declaration{tuple_label(e, prefix)};
    if (m == n && static_cast<int>(prefix.size()) == m - 1) {
      Tuple full = prefix;
      for (int k = 0; k < n; ++k)
        if (std::find(prefix.begin(), prefix.end(), k) == prefix.end()) full.push_back(k);
      return Declaration{tuple_label(e, full)};
    }
    return make_slot(static_cast<int>(prefix.size()), prefix);
  };

  make_slot = [&](int s, const Tuple& prefix) -> ProtocolPtr {
    auto root = std::make_shared<ProtocolNode>();
    root->acting_party = 0;
    root->povm.subsystem = slot_factors(0, s);
    root->povm.local_dims = e.structure.local_dims(0);
    Matrix rest = Matrix::Identity(d0, d0);
    for (int k = 0; k < n; ++k) {
      if (std::find(prefix.begin(), prefix.end(), k) != prefix.end()) continue;
      const Vector& a = certs[k]->per_party_vectors[0].amplitudes();
      const Matrix eff = scale * a * a.adjoint();
      rest -= eff;
      root->povm.effects.push_back({"detect:" + e.members[k].label, eff});

      Tuple next = prefix;
      next.push_back(k);
      Branch tail = identified(next);
      for (int p = parties - 1; p >= 1; --p) {
        auto test = std::make_shared<ProtocolNode>();
        test->acting_party = p;
        test->povm.subsystem = slot_factors(p, s);
        test->povm.local_dims = e.structure.local_dims(p);
        const Vector& b = certs[k]->per_party_vectors[p].amplitudes();
        const Matrix proj = b * b.adjoint() / b.squaredNorm();
        test->povm.effects.push_back({"yes:" + e.members[k].label, proj});
        test->povm.effects.push_back(
            {"no", Matrix::Identity(proj.rows(), proj.cols()) - proj});
        test->branches = {tail, inconclusive};
        tail = ProtocolPtr(test);
      }
      root->branches.push_back(tail);
    }
    root->povm.effects.push_back({"rest", rest});
    root->branches.push_back(inconclusive);
    return root;
  };
  return make_slot(0, {});
}

json protocol_to_json(const ProtocolNode& root) {
  json node;
  node["party"] = root.acting_party;
  node["subsystem"] = root.povm.subsystem;
  node["local_dims"] = root.povm.local_dims;
  json effects = json::array();
  for (const auto& [label, m] : root.povm.effects)
    effects.push_back({{"label", label}, {"matrix", matrix_to_json(m)}});
  node["effects"] = std::move(effects);
  json branches = json::array();
  for (const auto& b : root.branches) {
    if (const auto* child = std::get_if<ProtocolPtr>(&b)) {
      branches.push_back(protocol_to_json(**child));
    } else {
      const auto& d = std::get<Declaration>(b);
      branches.push_back({{"declare", d.answer ? json(*d.answer) : json(nullptr)}});
    }
  }
  node["branches"] = std::move(branches);
  return node;
}

json simulation_to_json(const SimulationReport& r) {
  json out;
  out["zero_error"] = r.zero_error;
  out["max_error"] = r.max_error;
  out["max_conservation_defect"] = r.max_conservation_defect;
  json hs = json::array();
  for (const auto& h : r.per_hypothesis) {
    json dist = json::object();
    for (const auto& [k, v] : h.distribution) dist[k] = v;
    hs.push_back({{"label", h.label},
                  {"success", h.success},
                  {"error", h.error},
                  {"inconclusive", h.inconclusive},
                  {"distribution", std::move(dist)}});
  }
  out["hypotheses"] = std::move(hs);
  return out;
}

}  // namespace locc
