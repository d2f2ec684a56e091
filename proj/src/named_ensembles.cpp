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

#include <array>
#include <cmath>
#include <numbers>

#include "locc/ensembles.hpp"
#include "locc/error.hpp"

namespace locc {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "bell",   "bennett9", "pw_trine", "sic_qubit", "double_sic_parallel",
    "double_sic_antiparallel", "duan4", "yu", "upb_tiles", "xb_from_upb", "smolin"};

const Complex kI{0.0, 1.0};

StateVector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (Complex a : amps) v(i++) = a;
  return StateVector::normalized({static_cast<int>(amps.size())}, v);
}

// Product member over a structure with one factor per party.
EnsembleMember product_member(std::string label, const PartyStructure& s,
                              std::vector<StateVector> factors) {
  StateVector body = assemble_product(s, factors);
  return {std::move(label), std::move(body), std::move(factors)};
}

EnsembleMember mixed_member(std::string label, const PartyStructure& s, Matrix rho) {
  return {std::move(label), Operator(s.factor_dims, std::move(rho)), std::nullopt};
}

StateVector orthogonal_qubit(const StateVector& s) {
  const Vector& a = s.amplitudes();
  Vector v(2);
  v << -std::conj(a(1)), std::conj(a(0));
  return StateVector({2}, v);
}

// Qubit SIC fiducials: s1 = |0>, s_j = (|0> + e^{2 pi i (j-2)/3} sqrt2 |1>)/sqrt3.
std::vector<StateVector> sic_states() {
  std::vector<StateVector> out{ket({1.0, 0.0})};
  for (int j = 2; j <= 4; ++j) {
    const Complex phase = std::exp(2.0 * std::numbers::pi * kI * double(j - 2) / 3.0);
    out.push_back(ket({1.0, phase * std::sqrt(2.0)}));
  }
  return out;
}

// |w_k> = exp(-i k pi/3 sigma_y)|0> = cos(k pi/3)|0> + sin(k pi/3)|1>.
StateVector trine(int k) {
  const double t = k * std::numbers::pi / 3.0;
  return ket({std::cos(t), std::sin(t)});
}

std::vector<StateVector> tiles_factors_a() {
  return {ket({1, 0, 0}), ket({0, 0, 1}), ket({1, -1, 0}), ket({0, 1, -1}), ket({1, 1, 1})};
}

std::vector<StateVector> tiles_factors_b() {
  return {ket({1, -1, 0}), ket({0, 1, -1}), ket({0, 0, 1}), ket({1, 0, 0}), ket({1, 1, 1})};
}

Ensemble make_bell() {
  Ensemble e{"bell", PartyStructure::bipartite(2, 2), {}, std::nullopt};
  for (int i = 1; i <= 4; ++i)
    e.members.push_back({"B" + std::to_string(i), bell_state(i), std::nullopt});
  return e;
}

Ensemble make_bennett9() {
  Ensemble e{"bennett9", PartyStructure::bipartite(3, 3), {}, std::nullopt};
  const auto k0 = ket({1, 0, 0}), k1 = ket({0, 1, 0}), k2 = ket({0, 0, 1});
  const auto p01 = ket({1, 1, 0}), m01 = ket({1, -1, 0});
  const auto p12 = ket({0, 1, 1}), m12 = ket({0, 1, -1});
  const std::vector<std::pair<StateVector, StateVector>> rows = {
      {k1, k1}, {k0, p01}, {k0, m01}, {k2, p12}, {k2, m12},
      {p12, k0}, {m12, k0}, {p01, k2}, {m01, k2}};
  for (std::size_t i = 0; i < rows.size(); ++i)
    e.members.push_back(product_member("psi" + std::to_string(i + 1), e.structure,
                                       {rows[i].first, rows[i].second}));
  return e;
}

Ensemble make_pw_trine() {
  Ensemble e{"pw_trine", PartyStructure::bipartite(2, 2), {}, std::nullopt};
  for (int k = 0; k < 3; ++k) {
    const std::string w = "w" + std::to_string(k);
    e.members.push_back(product_member(w + w, e.structure, {trine(k), trine(k)}));
  }
  return e;
}

Ensemble make_sic_qubit() {
  Ensemble e{"sic_qubit", PartyStructure::single(2), {}, std::nullopt};
  const auto s = sic_states();
  for (std::size_t i = 0; i < s.size(); ++i)
    e.members.push_back({"s" + std::to_string(i + 1), s[i], std::vector<StateVector>{s[i]}});
  return e;
}

Ensemble make_double_sic(bool antiparallel) {
  Ensemble e{antiparallel ? "double_sic_antiparallel" : "double_sic_parallel",
             PartyStructure::bipartite(2, 2), {}, std::nullopt};
  const auto s = sic_states();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string n = std::to_string(i + 1);
    if (antiparallel)
      e.members.push_back(
          product_member("gamma" + n, e.structure, {s[i], orthogonal_qubit(s[i])}));
    else
      e.members.push_back(product_member("s" + n + "s" + n, e.structure, {s[i], s[i]}));
  }
  return e;
}

Ensemble make_duan4() {
  Ensemble e{"duan4", PartyStructure::bipartite(2, 2), {}, std::nullopt};
  const auto zero = ket({1, 0}), one = ket({0, 1}), plus = ket({1, 1});
  const auto i_plus = ket({1, kI}), i_minus = ket({1, -kI});
  e.members.push_back(product_member("D1", e.structure, {zero, zero}));
  e.members.push_back(product_member("D2", e.structure, {one, one}));
  e.members.push_back(product_member("D3", e.structure, {plus, plus}));
  e.members.push_back(product_member("D4", e.structure, {i_plus, i_minus}));
  return e;
}

Ensemble make_yu(int d) {
  require(d >= 2, "yu ensemble needs local dimension d >= 2");
  Ensemble e{"yu", PartyStructure::bipartite(d, d), {}, std::nullopt};
  const Eigen::Index n = d * d;
  Vector phi = Vector::Zero(n);
  for (int i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
  const Matrix rho = phi * phi.adjoint();
  const Matrix sigma = (Matrix::Identity(n, n) - rho) / double(d * d - 1);
  e.members.push_back(mixed_member("rho", e.structure, rho));
  e.members.push_back(mixed_member("sigma", e.structure, sigma));
  return e;
}

Ensemble make_upb_tiles() {
  Ensemble e{"upb_tiles", PartyStructure::bipartite(3, 3), {}, std::nullopt};
  const auto a = tiles_factors_a();
  const auto b = tiles_factors_b();
  for (std::size_t i = 0; i < a.size(); ++i)
    e.members.push_back(product_member("t" + std::to_string(i + 1), e.structure, {a[i], b[i]}));
  return e;
}

Ensemble make_xb_from_upb() {
  const Ensemble tiles = make_upb_tiles();
  Ensemble e{"xb_from_upb", tiles.structure, {}, std::nullopt};
  const Eigen::Index n = 9;
  Matrix p = Matrix::Zero(n, n);
  for (const auto& m : tiles.members) p += m.state().amplitudes() * m.state().amplitudes().adjoint();
  const double upb_rank = static_cast<double>(tiles.size());
  e.members.push_back(mixed_member("sigma_upb", e.structure, p / upb_rank));
  e.members.push_back(
      mixed_member("rho_ent", e.structure, (Matrix::Identity(n, n) - p) / (9.0 - upb_rank)));
  return e;
}

Ensemble make_smolin() {
  Ensemble e{"smolin", {{2, 2, 2, 2}, {0, 1, 0, 1}}, {}, std::nullopt};
  e.members.push_back({"rho_S", smolin_state(), std::nullopt});
  return e;
}

Operator bell_projector(int i) { return Operator::projector(bell_state(i)); }

Matrix pairing_sum(std::span<const SmolinTerm> terms, bool regroup_from_a1a2) {
  // (A1,A2,B1,B2) -> (A1,B1,A2,B2)
  static constexpr std::array<int, 4> kToA1B1A2B2 = {0, 2, 1, 3};
  Matrix acc = Matrix::Zero(16, 16);
  for (const auto& t : terms) {
    Operator op = tensor_product(bell_projector(t.left), bell_projector(t.right));
    if (regroup_from_a1a2) op = regroup_factors(op, kToA1B1A2B2);
    acc += t.weight * op.matrix();
  }
  return acc;
}

constexpr std::array<SmolinTerm, 4> kSmolinTerms = {
    SmolinTerm{1, 1, 0.25}, SmolinTerm{2, 2, 0.25}, SmolinTerm{3, 3, 0.25},
    SmolinTerm{4, 4, 0.25}};

}  // namespace

std::span<const std::string_view> named_ensemble_names() { return kNames; }

StateVector bell_state(int i) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (i) {
    case 1: v << r, 0, 0, r; break;
    case 2: v << r, 0, 0, -r; break;
    case 3: v << 0, r, r, 0; break;
    case 4: v << 0, r, -r, 0; break;
    default: fail(ErrorKind::invalid_input, "Bell index must be 1..4");
  }
  return StateVector({2, 2}, v);
}

double smolin_decomposition_residual(std::span<const SmolinTerm> a1b1_terms,
                                     std::span<const SmolinTerm> a1a2_terms) {
  for (auto ts : {a1b1_terms, a1a2_terms})
    for (const auto& t : ts)
      require(t.left >= 1 && t.left <= 4 && t.right >= 1 && t.right <= 4,
              "Bell index must be 1..4");
  return max_abs_diff(pairing_sum(a1b1_terms, false), pairing_sum(a1a2_terms, true));
}

double smolin_identity_residual() {
  return smolin_decomposition_residual(kSmolinTerms, kSmolinTerms);
}

Operator smolin_state() {
  return Operator({2, 2, 2, 2}, pairing_sum(kSmolinTerms, false));
}

Ensemble build_named(std::string_view name, std::optional<int> param) {
  if (name == "bell") return make_bell();
  if (name == "bennett9") return make_bennett9();
  if (name == "pw_trine") return make_pw_trine();
  if (name == "sic_qubit") return make_sic_qubit();
  if (name == "double_sic_parallel") return make_double_sic(false);
  if (name == "double_sic_antiparallel") return make_double_sic(true);
  if (name == "duan4") return make_duan4();
  if (name == "yu") return make_yu(param.value_or(2));
  if (name == "upb_tiles") return make_upb_tiles();
  if (name == "xb_from_upb") return make_xb_from_upb();
  if (name == "smolin") return make_smolin();
  fail(ErrorKind::invalid_input, "unknown ensemble name '" + std::string(name) + "'");
}

}  // namespace locc
