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

#include <cmath>
#include <numbers>

#include "locc/error.hpp"
#include "locc/protocol.hpp"

namespace locc {

namespace {

Vector trine(int k) {
  const double t = k * std::numbers::pi / 3.0;
  Vector v(2);
  v << std::cos(t), std::sin(t);
  return v;
}

Vector perp(const Vector& v) {
  Vector out(2);
  out << -std::conj(v(1)), std::conj(v(0));
  return out;
}

Matrix proj(const Vector& v) { return v * v.adjoint() / v.squaredNorm(); }

// Two-outcome projective test on one factor.
std::shared_ptr<ProtocolNode> test_node(int party, int factor, int dim, const Vector& v,
                                        const std::string& label, Branch on_yes, Branch on_no) {
  auto node = std::make_shared<ProtocolNode>();
  node->acting_party = party;
  node->povm.subsystem = {factor};
  node->povm.local_dims = {dim};
  const Matrix p = proj(v);
  node->povm.effects = {{label, p}, {"not_" + label, Matrix::Identity(dim, dim) - p}};
  node->branches = {std::move(on_yes), std::move(on_no)};
  return node;
}

// Computational-basis measurement on one factor; branch i from `child(i)`.
template <class F>
std::shared_ptr<ProtocolNode> basis_node(int party, int factor, int dim, const std::string& name,
                                         F child) {
  auto node = std::make_shared<ProtocolNode>();
  node->acting_party = party;
  node->povm.subsystem = {factor};
  node->povm.local_dims = {dim};
  for (int i = 0; i < dim; ++i) {
    Matrix e = Matrix::Zero(dim, dim);
    e(i, i) = 1.0;
    node->povm.effects.push_back({name + "=" + std::to_string(i), e});
    node->branches.push_back(child(i));
  }
  return node;
}

}  // namespace

const char* to_string(YuMode m) {
  return m == YuMode::strict01 ? "strict01" : "any_anticorrelated";
}

YuMode yu_mode_from_string(std::string_view s) {
  if (s == "strict01") return YuMode::strict01;
  if (s == "any_anticorrelated") return YuMode::any_anticorrelated;
  fail(ErrorKind::invalid_input, "unknown mode '" + std::string(s) +
                                     "' (expected strict01 or any_anticorrelated)");
}

std::vector<std::string> named_protocol_names() {
  return {"pw_conclusive", "yu_marking", "upb_marking"};
}

ProtocolPtr pw_conclusive(int k) {
  require(k >= 0 && k <= 2, "pw_conclusive target index must be 0, 1 or 2");
  const std::string label = "w" + std::to_string(k) + "w" + std::to_string(k);
  const Vector a = perp(trine((k + 1) % 3));
  const Vector b = perp(trine((k + 2) % 3));
  const Declaration none{};
  auto bob = test_node(1, 1, 2, b, "b", Declaration{label}, none);
  return test_node(0, 0, 2, a, "a", ProtocolPtr(bob), none);
}

Povm pw_conclusive_povm(int k) {
  require(k >= 0 && k <= 2, "pw_conclusive target index must be 0, 1 or 2");
  const Vector a = perp(trine((k + 1) % 3));
  const Vector b = perp(trine((k + 2) % 3));
  const Vector ap = perp(a);
  const Vector bp = perp(b);
  auto kron = [](const Vector& x, const Vector& y) {
    Vector out(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out(2 * i + j) = x(i) * y(j);
    return out;
  };
  Povm p;
  p.subsystem = {0, 1};
  p.local_dims = {2, 2};
  p.effects = {{"E0", proj(kron(a, b))},
               {"E?", proj(kron(a, bp))},
               {"E??", proj(kron(ap, b))},
               {"E???", proj(kron(ap, bp))}};
  return p;
}

ProtocolPtr yu_marking(int d, YuMode mode) {
  require(d >= 2, "yu_marking needs d >= 2");
  // Factors of the two-slot structure: A1 = 0, A2 = 1, B1 = 2, B2 = 3.
  auto flags = [mode](int i, int j) {
    return mode == YuMode::strict01 ? (i == 0 && j == 1) : (i != j);
  };
  const Declaration none{};
  const ProtocolPtr slot2 = basis_node(0, 1, d, "a2", [&](int i) -> Branch {
    return ProtocolPtr(basis_node(1, 3, d, "b2", [&](int j) -> Branch {
      if (flags(i, j)) return Declaration{"rho,sigma"};
      return none;
    }));
  });
  return basis_node(0, 0, d, "a1", [&](int i) -> Branch {
    return ProtocolPtr(basis_node(1, 2, d, "b1", [&](int j) -> Branch {
      if (flags(i, j)) return Declaration{"sigma,rho"};
      return slot2;
    }));
  });
}

ProtocolPtr upb_marking() {
  const Ensemble tiles = build_named("upb_tiles");
  const auto& t1 = *tiles.members.front().product_factors;
  const Vector& a = t1[0].amplitudes();
  const Vector& b = t1[1].amplitudes();
  const Declaration none{};
  // Factors of the two-slot structure: A1 = 0, A2 = 1, B1 = 2, B2 = 3.
  auto slot2_b = test_node(1, 3, 3, b, "t1_b", Declaration{"rho_ent,sigma_upb"}, none);
  ProtocolPtr slot2 = test_node(0, 1, 3, a, "t1_a", ProtocolPtr(slot2_b), none);
  auto slot1_b = test_node(1, 2, 3, b, "t1_b", Declaration{"sigma_upb,rho_ent"}, slot2);
  return test_node(0, 0, 3, a, "t1_a", ProtocolPtr(slot1_b), slot2);
}

}  // namespace locc
