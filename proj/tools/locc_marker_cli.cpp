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

// locc-marker command-line front end. Talks to the library only through the
// C interface.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locc/locc_marker.h"

namespace {

struct Options {
  std::string named;
  std::string file;
  int d = 0;
  int m = 0;
  std::optional<std::string> target;
  std::optional<std::uint64_t> seed;
  int restarts = -1;
  std::optional<std::uint64_t> branch_cap;
  std::optional<double> rank_tol, orth_tol, identity_tol;
  std::string format = "text";
  std::string out;
  std::string method = "auto";
  std::string mode = "any_anticorrelated";
  bool tree = false;
  std::vector<std::string> claims;
};

struct EnsembleDeleter {
  void operator()(locc_ensemble* e) const { locc_ensemble_free(e); }
};
using EnsemblePtr = std::unique_ptr<locc_ensemble, EnsembleDeleter>;

struct Failure {
  int code;
};

int report_error(locc_status s) {
  std::cerr << "locc-marker: " << locc_last_error() << '\n';
  return static_cast<int>(s);
}

locc_config make_config(const Options& o) {
  locc_config c;
  locc_config_default(&c);
  if (const char* env = std::getenv("LOCC_MARKER_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "locc-marker: LOCC_MARKER_SEED is not an unsigned integer\n";
      throw Failure{LOCC_INPUT_ERROR};
    }
  }
  if (o.seed) c.seed = *o.seed;
  if (o.restarts >= 0) c.restarts = o.restarts;
  if (o.branch_cap) c.branch_cap = *o.branch_cap;
  if (o.rank_tol) c.rank_rel_tol = *o.rank_tol;
  if (o.orth_tol) c.orth_tol = *o.orth_tol;
  if (o.identity_tol) c.identity_tol = *o.identity_tol;
  return c;
}

EnsemblePtr load_ensemble(const Options& o, const locc_config& cfg) {
  if (o.named.empty() == o.file.empty()) {
    std::cerr << "locc-marker: give exactly one of --named or --file\n";
    throw Failure{LOCC_INPUT_ERROR};
  }
  locc_ensemble* e = nullptr;
  locc_status s;
  if (!o.named.empty()) {
    s = locc_ensemble_named(o.named.c_str(), o.d, &e);
  } else {
    std::ifstream in(o.file, std::ios::binary);
    if (!in) {
      std::cerr << "locc-marker: cannot read " << o.file << '\n';
      throw Failure{LOCC_INPUT_ERROR};
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    s = locc_ensemble_parse(text.c_str(), &cfg, &e);
  }
  if (s != LOCC_OK) throw Failure{report_error(s)};
  return EnsemblePtr(e);
}

// Writes the report in the requested format; returns false on I/O failure.
bool write_report(const Options& o, const char* json) {
  std::string body = json;
  if (o.format == "text") {
    char* text = nullptr;
    if (locc_render_text(json, &text) != LOCC_OK) return false;
    body = text;
    locc_string_free(text);
  } else {
    body += '\n';
  }
  if (o.out.empty()) {
    std::cout << body;
    return static_cast<bool>(std::cout);
  }
  std::ofstream f(o.out, std::ios::binary);
  f << body;
  return static_cast<bool>(f);
}

// Emits `out` (if any) and maps the status to an exit code.
int finish(const Options& o, locc_status s, char* out) {
  int code = static_cast<int>(s);
  if (out) {
    if (!write_report(o, out)) {
      std::cerr << "locc-marker: cannot write report\n";
      code = LOCC_INPUT_ERROR;
    }
    locc_string_free(out);
  }
  if (s != LOCC_OK) std::cerr << "locc-marker: " << locc_last_error() << '\n';
  return code;
}

int run(const std::string& command, const Options& o) {
  const locc_config cfg = make_config(o);
  char* out = nullptr;
  if (command == "ensembles") {
    const locc_status s = locc_ensembles_list(&out);
    return finish(o, s, out);
  }
  if (command == "reproduce") {
    std::vector<const char*> ids;
    for (const auto& c : o.claims) ids.push_back(c.c_str());
    const locc_status s = locc_reproduce(ids.data(), ids.size(), &cfg, &out);
    return finish(o, s, out);
  }
  const EnsemblePtr e = load_ensemble(o, cfg);
  locc_status s = LOCC_INTERNAL;
  if (command == "analyze") {
    s = locc_analyze(e.get(), o.m, &cfg, &out);
  } else if (command == "classify") {
    s = locc_classify(e.get(), &cfg, &out);
  } else if (command == "detect") {
    s = locc_detect(e.get(), o.target ? o.target->c_str() : nullptr, o.m, o.method.c_str(), &cfg,
                    &out);
  } else if (command == "mark") {
    s = locc_mark(e.get(), o.m > 0 ? o.m : 2, o.mode.c_str(), o.tree ? 1 : 0, &cfg, &out);
  }
  return finish(o, s, out);
}

void add_common(CLI::App* sub, Options& o, bool needs_ensemble) {
  if (needs_ensemble) {
    sub->add_option("--named", o.named, "Named ensemble");
    sub->add_option("--file", o.file, "Ensemble JSON document");
    sub->add_option("--d", o.d, "Local dimension for parameterized ensembles")->check(CLI::Range(2, 64));
  }
  sub->add_option("--seed", o.seed, "Random seed (overrides LOCC_MARKER_SEED)");
  sub->add_option("--restarts", o.restarts, "Heuristic restarts")->check(CLI::Range(1, 1000000));
  sub->add_option("--branch-cap", o.branch_cap, "Maximum exact-search branches");
  sub->add_option("--rank-tol", o.rank_tol, "Relative rank tolerance");
  sub->add_option("--orth-tol", o.orth_tol, "Orthogonality tolerance");
  sub->add_option("--identity-tol", o.identity_tol, "Identity/completeness tolerance");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", o.out, "Write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conclusive local discrimination and marking analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(locc_version()));
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Independence and local distinguishability");
  add_common(analyze, o, true);
  analyze->add_option("--m", o.m, "Also analyze the m-fold marking set")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "Unextendibility classification");
  add_common(classify, o, true);

  auto* detect = app.add_subcommand("detect", "Product detecting states");
  add_common(detect, o, true);
  detect->add_option("--m", o.m, "Work on the m-fold marking set")->check(CLI::PositiveNumber);
  detect->add_option("--target", o.target, "Target label (default: every member)");
  detect->add_option("--method", o.method, "auto, exact or heuristic")
      ->check(CLI::IsMember({"auto", "exact", "heuristic"}));

  auto* mark = app.add_subcommand("mark", "Build and simulate a marking protocol");
  add_common(mark, o, true);
  mark->add_option("--m", o.m, "Number of slots (default 2)")->check(CLI::PositiveNumber);
  mark->add_option("--mode", o.mode, "Flag rule for the Yu pair")
      ->check(CLI::IsMember({"strict01", "any_anticorrelated"}));
  mark->add_flag("--tree", o.tree, "Include the protocol tree in the report");

  auto* reproduce = app.add_subcommand("reproduce", "Run the regression claims");
  add_common(reproduce, o, false);
  reproduce->add_option("claims", o.claims, "Claim ids or 'all'")->default_val("all");

  auto* ensembles = app.add_subcommand("ensembles", "List the named ensembles");
  add_common(ensembles, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return LOCC_INPUT_ERROR;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const Failure& f) {
    return f.code;
  }
}
