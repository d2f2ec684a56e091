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

#include <cmath>
#include <numbers>

#include "locc/ensembles.hpp"
#include "locc/error.hpp"
#include "test_util.hpp"

using namespace locc;
using oracle::C;
using oracle::ket;
using oracle::kron;
using oracle::normalized;
using oracle::Vec;

namespace {

// Independent SIC construction.
Vec sic(int j) {
  if (j == 1) return ket({1, 0});
  const double ph = 2 * std::numbers::pi * (j - 2) / 3.0;
  return ket({1.0 / std::sqrt(3.0), std::polar(std::sqrt(2.0 / 3.0), ph)});
}

Vec perp(const Vec& v) { return ket({-std::conj(v(1)), std::conj(v(0))}); }

// Equal up to a global phase.
bool same_ray(const Vec& a, const Vec& b) {
  return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) < 1e-12;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::internal;
}

}  // namespace

TEST_CASE("every named ensemble builds and validates") {
  CHECK(named_ensemble_names().size() == 11);
  for (auto name : named_ensemble_names()) {
    const Ensemble e = build_named(name);
    CAPTURE(name);
    CHECK(validate(e).ok());
    CHECK(e.name == name);
  }
  CHECK(kind_of([] { build_named("nope"); }) == ErrorKind::invalid_input);
}

TEST_CASE("bell and bennett9 are orthonormal") {
  for (auto name : {"bell", "bennett9"}) {
    const auto v = testutil::amplitudes(build_named(name));
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        CHECK(std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
  const Ensemble b9 = build_named("bennett9");
  CHECK(b9.members[0].label == "psi1");
  CHECK(same_ray(b9.members[0].state().amplitudes(), kron(ket({0, 1, 0}), ket({0, 1, 0}))));
  CHECK(b9.all_product());
  CHECK_FALSE(build_named("bell").all_product());
}

TEST_CASE("double trine overlaps") {
  const Ensemble pw = build_named("pw_trine");
  REQUIRE(pw.size() == 3);
  const auto& f0 = pw.members[0].product_factors->at(0).amplitudes();
  const auto& f1 = pw.members[1].product_factors->at(0).amplitudes();
  CHECK(std::abs(f0.dot(f1)) == doctest::Approx(0.5));
  const auto v = testutil::amplitudes(pw);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        CHECK(std::abs(v[i].dot(v[j])) == doctest::Approx(0.25));
        CHECK(std::norm(v[i].dot(v[j])) == doctest::Approx(1.0 / 16.0));
      }
}

TEST_CASE("SIC based ensembles") {
  const auto s = testutil::amplitudes(build_named("sic_qubit"));
  const auto par = testutil::amplitudes(build_named("double_sic_parallel"));
  const auto anti = testutil::amplitudes(build_named("double_sic_antiparallel"));
  REQUIRE(s.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(same_ray(s[i], sic(i + 1)));
    CHECK(same_ray(par[i], kron(sic(i + 1), sic(i + 1))));
    CHECK(same_ray(anti[i], kron(sic(i + 1), perp(sic(i + 1)))));
    for (int j = 0; j < 4; ++j)
      if (i != j) {
        CHECK(std::norm(s[i].dot(s[j])) == doctest::Approx(1.0 / 3.0));
        CHECK(std::abs(anti[i].dot(anti[j])) == doctest::Approx(1.0 / 3.0));
      }
  }
}

TEST_CASE("duan and tiles ensembles") {
  const double r = 1.0 / std::sqrt(2.0);
  const Vec plus = ket({r, r}), minus = ket({r, -r});
  const Vec ip = ket({r, C(0, r)}), im = ket({r, C(0, -r)});
  const std::vector<Vec> duan = {kron(ket({1, 0}), ket({1, 0})), kron(ket({0, 1}), ket({0, 1})),
                                 kron(plus, plus), kron(ip, im)};
  const auto d = testutil::amplitudes(build_named("duan4"));
  for (int i = 0; i < 4; ++i) CHECK(same_ray(d[i], duan[i]));

  const std::vector<Vec> a = {ket({1, 0, 0}), ket({0, 0, 1}), normalized(ket({1, -1, 0})),
                              normalized(ket({0, 1, -1})), normalized(ket({1, 1, 1}))};
  const std::vector<Vec> b = {normalized(ket({1, -1, 0})), normalized(ket({0, 1, -1})),
                              ket({0, 0, 1}), ket({1, 0, 0}), normalized(ket({1, 1, 1}))};
  const auto t = testutil::amplitudes(build_named("upb_tiles"));
  for (int i = 0; i < 5; ++i) {
    CHECK(same_ray(t[i], kron(a[i], b[i])));
    for (int j = 0; j < 5; ++j)
      if (i != j) CHECK(std::abs(t[i].dot(t[j])) < 1e-12);
  }
}

TEST_CASE("mixed ensembles") {
  for (int d : {2, 3}) {
    const Ensemble yu = build_named("yu", d);
    const Matrix rho = yu.members[yu.index_of("rho")].density().matrix();
    const Matrix sigma = yu.members[yu.index_of("sigma")].density().matrix();
    CHECK(std::real(rho.trace()) == doctest::Approx(1.0));
    CHECK(std::real(sigma.trace()) == doctest::Approx(1.0));
    CHECK(std::abs((rho * sigma).trace()) < 1e-12);
    CHECK(std::real(rho(0, 0)) == doctest::Approx(1.0 / d));
  }
  const Ensemble xb = build_named("xb_from_upb");
  const Matrix s = xb.members[0].density().matrix();
  const Matrix e = xb.members[1].density().matrix();
  CHECK(std::abs((s * e).trace()) < 1e-12);
  CHECK(min_eigenvalue(e) > -1e-12);
  CHECK(kind_of([] { build_named("yu", 1); }) == ErrorKind::invalid_input);
}

TEST_CASE("smolin identity") {
  CHECK(smolin_identity_residual() <= 1e-12);
  const Operator s = smolin_state();
  CHECK(std::real(s.matrix().trace()) == doctest::Approx(1.0));
  CHECK(min_eigenvalue(s.matrix()) > -1e-12);
  const std::vector<SmolinTerm> pairing{{1, 1}, {2, 2}, {3, 3}, {4, 4}};
  CHECK(smolin_decomposition_residual(pairing, pairing) <= 1e-12);
  const std::vector<SmolinTerm> wrong{{1, 1, 0.5}, {2, 2, 0.5}};
  CHECK(smolin_decomposition_residual(pairing, wrong) > 1e-3);
  const std::vector<SmolinTerm> bad{{5, 1, 1.0}};
  CHECK(kind_of([&] { smolin_decomposition_residual(bad, pairing); }) ==
        ErrorKind::invalid_input);
}

TEST_CASE("product factor inference and subsets") {
  Ensemble bell = build_named("bell");
  bell = with_inferred_factors(bell);
  for (const auto& m : bell.members) CHECK_FALSE(m.product_factors.has_value());
  Ensemble duan = build_named("duan4");
  for (auto& m : duan.members) m.product_factors.reset();
  duan = with_inferred_factors(duan);
  CHECK(duan.all_product());
  const std::vector<std::size_t> idx{0, 2};
  const Ensemble sub = subset(duan, idx, "pair");
  CHECK(sub.size() == 2);
  CHECK(sub.members[1].label == "D3");
  CHECK(kind_of([&] { duan.index_of("D9"); }) == ErrorKind::invalid_input);
}

TEST_CASE("json round trip and schema errors") {
  for (auto name : {"bell", "duan4", "yu", "smolin"}) {
    const Ensemble e = build_named(name);
    const Ensemble back = parse_ensemble(serialize_ensemble(e));
    CAPTURE(name);
    REQUIRE(back.size() == e.size());
    CHECK(back.structure == e.structure);
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(back.members[i].label == e.members[i].label);
      CHECK(max_abs_diff(back.members[i].density().matrix(), e.members[i].density().matrix()) <
            1e-15);
    }
  }
  const Ensemble d2 = parse_ensemble(serialize_ensemble(build_named("bennett9")));
  CHECK(d2.all_product());

  CHECK(kind_of([] { parse_ensemble(R"({"name":"x","party_dims":[2,2],"members":[]})"); }) ==
        ErrorKind::invalid_input);
  CHECK(kind_of([] {
          parse_ensemble(
              R"({"name":"x","party_dims":[2,2],"members":[{"label":"a","kind":"pure","amplitudes":[1,0,0]}]})");
        }) == ErrorKind::invalid_input);
  CHECK(kind_of([] { parse_ensemble("{not json"); }) == ErrorKind::invalid_input);
  try {
    parse_ensemble(R"({"name":"x","party_dims":[2],"members":[{"kind":"pure","amplitudes":[1,0]}]})");
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/members/0") != std::string::npos);
  }
}
