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

#pragma once

#include <string>
#include <vector>

#include "locc/ensembles.hpp"
#include "oracles.hpp"

namespace testutil {

inline std::vector<oracle::Vec> amplitudes(const locc::Ensemble& e) {
  std::vector<oracle::Vec> out;
  for (const auto& s : e.states()) out.push_back(s.amplitudes());
  return out;
}

inline locc::Ensemble qubit_pair_ensemble(const std::vector<oracle::QubitPair>& members,
                                          const std::string& name = "random") {
  locc::Ensemble e;
  e.name = name;
  e.structure = locc::PartyStructure::bipartite(2, 2);
  for (std::size_t i = 0; i < members.size(); ++i) {
    locc::EnsembleMember m;
    m.label = "m" + std::to_string(i);
    m.body = locc::StateVector({2, 2}, oracle::kron(members[i].a, members[i].b));
    m.product_factors = std::vector<locc::StateVector>{locc::StateVector({2}, members[i].a),
                                                       locc::StateVector({2}, members[i].b)};
    e.members.push_back(std::move(m));
  }
  return e;
}

}  // namespace testutil
