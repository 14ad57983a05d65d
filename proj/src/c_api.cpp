#include "hkcube/hkcube.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hkcube/commands.hpp"
#include "hkcube/config.hpp"
#include "hkcube/error.hpp"
#include "hkcube/nrp.hpp"
#include "hkcube/zoo.hpp"

struct hk_system {
  hkcube::SystemPtr sys;
};

struct hk_relation {
  hkcube::Relation rel;
  std::vector<std::size_t> class_of;
  std::size_t classes = 0;
};

namespace {

thread_local std::string g_last_error;

hk_status status_of(hkcube::ErrorCode c) { return static_cast<hk_status>(static_cast<int>(c) + 1); }

hk_status fail(hk_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
hk_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const hkcube::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HK_ERR_BUDGET_EXCEEDED, "BudgetExceeded: out of memory");
  } catch (const std::exception& e) {
    return fail(HK_ERR_UNKNOWN, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

hk_status wrap_system(hkcube::SystemPtr sys, hk_system** out) {
  *out = new hk_system{std::move(sys)};
  return HK_OK;
}

}  // namespace

extern "C" {

const char* hk_status_string(hk_status status) {
  switch (status) {
    case HK_OK: return "Ok";
    case HK_ERR_NULL_ARGUMENT: return "NullArgument";
    case HK_ERR_UNKNOWN_COMMAND: return "UnknownCommand";
    case HK_ERR_UNKNOWN: return "Unknown";
    default: break;
  }
  const int c = static_cast<int>(status) - 1;
  if (c >= 0 && c <= static_cast<int>(hkcube::ErrorCode::TooLarge))
    return hkcube::to_string(static_cast<hkcube::ErrorCode>(c));
  return "Unknown";
}

const char* hk_last_error(void) { return g_last_error.c_str(); }

void hk_string_free(char* s) { std::free(s); }

hk_status hk_system_from_builtin(const char* name, hk_system** out) {
  if (!name || !out) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return wrap_system(hkcube::builtin_system(name), out); });
}

hk_status hk_system_from_config(const char* text, hk_system** out) {
  if (!text || !out) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return wrap_system(hkcube::parse_config(text), out); });
}

hk_status hk_system_load(const char* name_or_path, hk_system** out) {
  if (!name_or_path || !out) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { return wrap_system(hkcube::load_system(name_or_path), out); });
}

void hk_system_free(hk_system* sys) { delete sys; }

size_t hk_system_size(const hk_system* sys) { return sys ? sys->sys->size() : 0; }

size_t hk_system_group_order(const hk_system* sys) { return sys ? sys->sys->group().order() : 0; }

const char* hk_system_name(const hk_system* sys) { return sys ? sys->sys->name().c_str() : ""; }

hk_status hk_nrp(hk_system* sys, int d, uint64_t budget, hk_relation** out) {
  if (!sys || !out) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    hkcube::CubeSpace space(sys->sys, budget);
    auto r = std::make_unique<hk_relation>();
    r->rel = hkcube::nrp_relation(space, d).relation;
    r->class_of = r->rel.class_index();
    r->classes = r->rel.classes().size();
    *out = r.release();
    return HK_OK;
  });
}

void hk_relation_free(hk_relation* r) { delete r; }

size_t hk_relation_points(const hk_relation* r) { return r ? r->rel.points() : 0; }

int hk_relation_contains(const hk_relation* r, size_t x, size_t y) {
  if (!r || x >= r->rel.points() || y >= r->rel.points()) return 0;
  return r->rel.contains(static_cast<hkcube::Point>(x), static_cast<hkcube::Point>(y)) ? 1 : 0;
}

size_t hk_relation_pair_count(const hk_relation* r) { return r ? r->rel.pair_count() : 0; }

size_t hk_relation_class_count(const hk_relation* r) { return r ? r->classes : 0; }

size_t hk_relation_class_of(const hk_relation* r, size_t x) {
  if (!r || x >= r->class_of.size()) return static_cast<size_t>(-1);
  return r->class_of[x];
}

hk_status hk_run(hk_system* sys, const char* command, const char* options_json, char** output, int* verdict) {
  if (!command || !output || !verdict) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  if (!hkcube::is_known_command(command))
    return fail(HK_ERR_UNKNOWN_COMMAND, std::string("unknown command '") + command + "'");
  if (!sys && hkcube::command_needs_system(command))
    return fail(HK_ERR_NULL_ARGUMENT, std::string(command) + " needs a system");
  return guarded([&] {
    nlohmann::json j = nullptr;
    if (options_json && *options_json) {
      try {
        j = nlohmann::json::parse(options_json);
      } catch (const nlohmann::json::exception& e) {
        hkcube::raise(hkcube::ErrorCode::ParseError, std::string("options: ") + e.what());
      }
    }
    const auto opts = hkcube::options_from_json(j);
    const auto res = hkcube::run_command(command, sys ? sys->sys : nullptr, opts);
    *output = dup_string(res.output);
    *verdict = res.pass ? 0 : 1;
    return HK_OK;
  });
}

hk_status hk_catalog(char** output) {
  if (!output) return fail(HK_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    std::string s;
    for (const auto& n : hkcube::zoo_catalog()) s += n + '\n';
    *output = dup_string(s);
    return HK_OK;
  });
}

}  // extern "C"
