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

// Exit-code contract of the command-line tool, one case per error class.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

const std::string kExe = LOCC_MARKER_EXE;
const std::string kScratch = TEST_SCRATCH_DIR;

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + kExe + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_file(const std::string& name, const std::string& body) {
  const std::string path = kScratch + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("successful commands exit 0") {
  CHECK(run("ensembles") == 0);
  CHECK(run("analyze --named bell --restarts 5") == 0);
  CHECK(run("analyze --named duan4 --m 2") == 0);
  CHECK(run("classify --named pw_trine") == 0);
  CHECK(run("detect --named bennett9 --target psi1") == 0);
  CHECK(run("mark --named bennett9 --m 2") == 0);
  CHECK(run("mark --named yu --d 3 --m 2 --mode any_anticorrelated") == 0);
  CHECK(run("reproduce eq2_smolin appD_counts") == 0);
}

TEST_CASE("input errors exit 2") {
  const std::string empty = write_file("empty.json", R"({"name":"e","party_dims":[2,2],"members":[]})");
  CHECK(run("analyze --file " + empty) == 2);
  CHECK(run("analyze --file " + kScratch + "/missing.json") == 2);
  CHECK(run("analyze --named nope") == 2);
  CHECK(run("analyze") == 2);
  CHECK(run("analyze --named bell --file " + empty) == 2);
  CHECK(run("reproduce nosuchclaim") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analyze --named bell --format yaml") == 2);
  CHECK(run("analyze --named bell --orth-tol 0.5") == 2);
  CHECK(run("detect --named duan4 --target D9") == 2);
  CHECK(run("ensembles", "LOCC_MARKER_SEED=abc") == 2);
}

TEST_CASE("cap, undecidable and no-protocol exit codes") {
  CHECK(run("analyze --named duan4 --m 2 --branch-cap 100") == 3);
  const std::string pair = write_file(
      "pair.json",
      R"({"name":"pair","party_dims":[2,2],"members":[)"
      R"({"label":"a","kind":"pure","amplitudes":[0.7071067811865476,0,0,0.7071067811865476]},)"
      R"({"label":"b","kind":"pure","amplitudes":[0,0.7071067811865476,0.7071067811865476,0]}]})");
  CHECK(run("classify --file " + pair) == 4);
  CHECK(run("mark --named duan4 --m 2") == 5);
}

TEST_CASE("json output, --out and seed handling") {
  const std::string out = kScratch + "/yu.json";
  REQUIRE(run("mark --named yu --d 3 --m 2 --format json --out " + out) == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("min_success").get<double>() == doctest::Approx(0.75));

  const std::string s1 = kScratch + "/s1.json", s2 = kScratch + "/s2.json";
  REQUIRE(run("detect --named bell --target B1 --restarts 3 --format json --out " + s1,
              "LOCC_MARKER_SEED=7") == 0);
  REQUIRE(run("detect --named bell --target B1 --restarts 3 --seed 7 --format json --out " + s2) ==
          0);
  const auto a = nlohmann::json::parse(read_file(s1));
  const auto b = nlohmann::json::parse(read_file(s2));
  CHECK(a.at("results")[0].at("seed") == 7);
  CHECK(a == b);
}
