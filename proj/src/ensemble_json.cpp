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

#include "locc/ensembles.hpp"
#include "locc/error.hpp"

namespace locc {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  fail(ErrorKind::invalid_input, (path.empty() ? "/" : path) + ": " + msg);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error(path, "expected a [re, im] pair");
  const Complex z{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) schema_error(path, "non-finite value");
  return z;
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

std::vector<int> int_list(const json& j, const std::string& path, bool positive) {
  if (!j.is_array()) schema_error(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_number_integer()) schema_error(p, "expected an integer");
    const auto v = j[i].get<long long>();
    if (v < 0 || (positive && v == 0) || v > 1'000'000) schema_error(p, "integer out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Vector vector_from_json(const json& j, std::size_t expected, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of [re, im] pairs");
  if (j.size() != expected)
    schema_error(path, "expected " + std::to_string(expected) + " amplitudes, got " +
                           std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], path + "/" + std::to_string(i));
  return v;
}

Matrix matrix_from_json(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n)
    schema_error(path, "expected " + std::to_string(n) + " rows");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const Vector row = vector_from_json(j[r], n, path + "/" + std::to_string(r));
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

PartyStructure structure_from_json(const json& doc) {
  const Dims party_dims = int_list(field(doc, "party_dims", ""), "/party_dims", true);
  if (party_dims.empty()) schema_error("/party_dims", "at least one party is required");
  std::vector<int> assignment;
  if (doc.contains("factor_assignment")) {
    assignment = int_list(doc["factor_assignment"], "/factor_assignment", false);
  } else {
    for (std::size_t p = 0; p < party_dims.size(); ++p) assignment.push_back(static_cast<int>(p));
  }
  for (std::size_t f = 0; f < assignment.size(); ++f)
    if (assignment[f] >= static_cast<int>(party_dims.size()))
      schema_error("/factor_assignment/" + std::to_string(f), "party index out of range");

  PartyStructure s;
  s.factor_assignment = assignment;
  if (doc.contains("factor_dims")) {
    s.factor_dims = int_list(doc["factor_dims"], "/factor_dims", true);
    if (s.factor_dims.size() != assignment.size())
      schema_error("/factor_dims", "length differs from factor_assignment");
  } else {
    std::vector<int> owned(party_dims.size(), 0);
    for (int p : assignment) ++owned[p];
    for (std::size_t p = 0; p < owned.size(); ++p)
      if (owned[p] != 1)
        schema_error("/factor_assignment",
                     "party " + std::to_string(p) +
                         " owns several or no factors; supply factor_dims");
    for (int p : assignment) s.factor_dims.push_back(party_dims[p]);
  }
  try {
    s.validate();
  } catch (const Error& e) {
    schema_error("/factor_assignment", e.what());
  }
  for (int p = 0; p < s.num_parties(); ++p)
    if (s.party_dim(p) != party_dims[p])
      schema_error("/party_dims/" + std::to_string(p), "does not equal the product of its factor dims");
  if (s.num_parties() != static_cast<int>(party_dims.size()))
    schema_error("/party_dims", "more parties than factor_assignment uses");
  return s;
}

}  // namespace

json state_to_json(const StateVector& s) {
  json out = json::array();
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
    out.push_back(complex_to_json(s.amplitudes()(i)));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

json ensemble_to_json(const Ensemble& e) {
  json doc;
  doc["name"] = e.name;
  doc["party_dims"] = e.structure.party_dims();
  doc["factor_assignment"] = e.structure.factor_assignment;
  if (e.structure.party_dims().size() != e.structure.factor_dims.size())
    doc["factor_dims"] = e.structure.factor_dims;
  json members = json::array();
  for (const auto& m : e.members) {
    json jm;
    jm["label"] = m.label;
    if (m.is_pure()) {
      jm["kind"] = "pure";
      jm["amplitudes"] = state_to_json(m.state());
    } else {
      jm["kind"] = "mixed";
      jm["matrix"] = matrix_to_json(std::get<Operator>(m.body).matrix());
    }
    if (m.product_factors) {
      json pf = json::array();
      for (const auto& f : *m.product_factors) pf.push_back(state_to_json(f));
      jm["product_factors"] = std::move(pf);
    }
    members.push_back(std::move(jm));
  }
  doc["members"] = std::move(members);
  if (e.derived_from) doc["derived_from"] = {{"base", e.derived_from->base}, {"m", e.derived_from->m}};
  return doc;
}

Ensemble ensemble_from_json(const json& doc, const ToleranceConfig& tol) {
  if (!doc.is_object()) schema_error("", "expected a JSON object");
  Ensemble e;
  const json& name = field(doc, "name", "");
  if (!name.is_string()) schema_error("/name", "expected a string");
  e.name = name.get<std::string>();
  e.structure = structure_from_json(doc);
  const std::size_t n = e.structure.total_dim();

  const json& members = field(doc, "members", "");
  if (!members.is_array()) schema_error("/members", "expected an array");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string path = "/members/" + std::to_string(i);
    const json& jm = members[i];
    if (!jm.is_object()) schema_error(path, "expected an object");
    const json& label = field(jm, "label", path);
    if (!label.is_string()) schema_error(path + "/label", "expected a string");
    const json& kind = field(jm, "kind", path);
    if (!kind.is_string()) schema_error(path + "/kind", "expected \"pure\" or \"mixed\"");

    EnsembleMember m;
    m.label = label.get<std::string>();
    if (kind == "pure") {
      m.body = StateVector(e.structure.factor_dims,
                           vector_from_json(field(jm, "amplitudes", path), n, path + "/amplitudes"));
    } else if (kind == "mixed") {
      m.body = Operator(e.structure.factor_dims,
                        matrix_from_json(field(jm, "matrix", path), n, path + "/matrix"));
    } else {
      schema_error(path + "/kind", "expected \"pure\" or \"mixed\"");
    }
    if (jm.contains("product_factors")) {
      const json& pf = jm["product_factors"];
      const std::string pp = path + "/product_factors";
      if (!pf.is_array() || static_cast<int>(pf.size()) != e.structure.num_parties())
        schema_error(pp, "expected one factor per party");
      std::vector<StateVector> factors;
      for (int p = 0; p < e.structure.num_parties(); ++p)
        factors.emplace_back(
            e.structure.local_dims(p),
            vector_from_json(pf[p], static_cast<std::size_t>(e.structure.party_dim(p)),
                             pp + "/" + std::to_string(p)));
      m.product_factors = std::move(factors);
    }
    e.members.push_back(std::move(m));
  }
  if (doc.contains("derived_from")) {
    const json& d = doc["derived_from"];
    if (!d.is_object() || !d.contains("base") || !d["base"].is_string() || !d.contains("m") ||
        !d["m"].is_number_integer())
      schema_error("/derived_from", "expected {\"base\": string, \"m\": integer}");
    e.derived_from = DerivedFrom{d["base"].get<std::string>(), d["m"].get<int>()};
  }

  const ValidationReport report = validate(e, tol);
  if (!report.ok()) {
    std::string msg = "ensemble failed validation:";
    for (const auto& v : report.violations)
      msg += " [" + (v.label.empty() ? std::string("ensemble") : v.label) + "] " + v.message + ";";
    msg.pop_back();
    fail(ErrorKind::invalid_input, msg);
  }
  return e;
}

Ensemble parse_ensemble(std::string_view document, const ToleranceConfig& tol) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& err) {
    fail(ErrorKind::invalid_input, std::string("malformed JSON: ") + err.what());
  }
  return ensemble_from_json(doc, tol);
}

std::string serialize_ensemble(const Ensemble& e) { return ensemble_to_json(e).dump(2); }

}  // namespace locc
