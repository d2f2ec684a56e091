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

#include "locc/locc_marker.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "locc/claims.hpp"
#include "locc/commands.hpp"
#include "locc/error.hpp"

struct locc_ensemble {
  locc::Ensemble e;
};

namespace {

thread_local std::string g_last_error;

locc_status status_of(locc::ErrorKind k) {
  switch (k) {
    case locc::ErrorKind::invalid_input:
    case locc::ErrorKind::dimension_mismatch: return LOCC_INPUT_ERROR;
    case locc::ErrorKind::cap_exceeded: return LOCC_CAP_EXCEEDED;
    case locc::ErrorKind::undecidable: return LOCC_UNDECIDABLE;
    case locc::ErrorKind::no_protocol: return LOCC_NO_PROTOCOL;
    case locc::ErrorKind::internal: return LOCC_INTERNAL;
  }
  return LOCC_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

locc::DetectConfig to_config(const locc_config* c) {
  locc::DetectConfig cfg;
  if (c) {
    cfg.tol.rank_rel_tol = c->rank_rel_tol;
    cfg.tol.orth_tol = c->orth_tol;
    cfg.tol.identity_tol = c->identity_tol;
    cfg.seed = c->seed;
    cfg.restarts = c->restarts;
    cfg.branch_cap = c->branch_cap;
  }
  cfg.tol.validate();
  locc::require(cfg.restarts >= 1, "restarts must be at least 1");
  locc::require(cfg.branch_cap >= 1, "branch cap must be at least 1");
  return cfg;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
locc_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const locc::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return LOCC_INPUT_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LOCC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LOCC_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LOCC_INTERNAL;
  }
}

locc_status emit(const nlohmann::json& j, char** out) {
  *out = dup_string(j.dump(2));
  return LOCC_OK;
}

void render(const nlohmann::json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << k << ":\n";
        render(v, indent + 1, os);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_primitive(); });
    if (flat) {
      os << pad << j.dump() << '\n';
      return;
    }
    std::size_t i = 0;
    for (const auto& v : j) {
      os << pad << "- [" << i++ << "]\n";
      render(v, indent + 1, os);
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

#define LOCC_CHECK_OUT(p) \
  if (!(p)) locc::fail(locc::ErrorKind::invalid_input, "null output pointer")

}  // namespace

extern "C" {

void locc_config_default(locc_config* cfg) {
  if (!cfg) return;
  const locc::DetectConfig d;
  cfg->rank_rel_tol = d.tol.rank_rel_tol;
  cfg->orth_tol = d.tol.orth_tol;
  cfg->identity_tol = d.tol.identity_tol;
  cfg->seed = d.seed;
  cfg->restarts = d.restarts;
  cfg->branch_cap = d.branch_cap;
}

const char* locc_version(void) { return "1.0.0"; }

const char* locc_last_error(void) { return g_last_error.c_str(); }

void locc_string_free(char* s) { std::free(s); }

locc_status locc_ensemble_named(const char* name, int param, locc_ensemble** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(name != nullptr, "null ensemble name");
    std::optional<int> p;
    if (param > 0) p = param;
    *out = new locc_ensemble{locc::build_named(name, p)};
    return LOCC_OK;
  });
}

locc_status locc_ensemble_parse(const char* json, const locc_config* cfg, locc_ensemble** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(json != nullptr, "null document");
    *out = new locc_ensemble{locc::parse_ensemble(json, to_config(cfg).tol)};
    return LOCC_OK;
  });
}

void locc_ensemble_free(locc_ensemble* e) { delete e; }

size_t locc_ensemble_size(const locc_ensemble* e) { return e ? e->e.size() : 0; }

locc_status locc_ensemble_to_json(const locc_ensemble* e, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(e != nullptr, "null ensemble");
    *out = dup_string(locc::serialize_ensemble(e->e));
    return LOCC_OK;
  });
}

locc_status locc_ensembles_list(char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    return emit(locc::cmd_ensembles(), out);
  });
}

locc_status locc_analyze(const locc_ensemble* e, int m, const locc_config* cfg, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(e != nullptr, "null ensemble");
    std::optional<int> mm;
    if (m > 0) mm = m;
    return emit(locc::cmd_analyze(e->e, mm, to_config(cfg)), out);
  });
}

locc_status locc_classify(const locc_ensemble* e, const locc_config* cfg, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(e != nullptr, "null ensemble");
    return emit(locc::cmd_classify(e->e, to_config(cfg)), out);
  });
}

locc_status locc_detect(const locc_ensemble* e, const char* target, int m, const char* method,
                        const locc_config* cfg, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(e != nullptr, "null ensemble");
    std::optional<std::string> t;
    if (target) t = target;
    std::optional<int> mm;
    if (m > 0) mm = m;
    const auto meth = locc::detect_method_from_string(method ? method : "auto");
    return emit(locc::cmd_detect(e->e, t, mm, meth, to_config(cfg)), out);
  });
}

locc_status locc_mark(const locc_ensemble* e, int m, const char* mode, int include_tree,
                      const locc_config* cfg, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(e != nullptr, "null ensemble");
    locc::MarkOptions opts;
    opts.m = m;
    opts.mode = locc::yu_mode_from_string(mode ? mode : "any_anticorrelated");
    opts.include_tree = include_tree != 0;
    return emit(locc::cmd_mark(e->e, opts, to_config(cfg)), out);
  });
}

locc_status locc_reproduce(const char* const* ids, size_t count, const locc_config* cfg,
                           char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(ids != nullptr || count == 0, "null id list");
    std::vector<std::string> list;
    for (size_t i = 0; i < count; ++i) {
      locc::require(ids[i] != nullptr, "null claim id");
      list.emplace_back(ids[i]);
    }
    if (list.empty()) list.emplace_back("all");
    const nlohmann::json report = locc::cmd_reproduce(list, to_config(cfg));
    emit(report, out);
    if (!report.at("all_pass").get<bool>()) {
      g_last_error = "one or more claims failed";
      return LOCC_CLAIM_FAILED;
    }
    return LOCC_OK;
  });
}

locc_status locc_render_text(const char* json, char** out) {
  return guarded([&] {
    LOCC_CHECK_OUT(out);
    *out = nullptr;
    locc::require(json != nullptr, "null document");
    std::ostringstream os;
    render(nlohmann::json::parse(json), 0, os);
    *out = dup_string(os.str());
    return LOCC_OK;
  });
}

}  // extern "C"
