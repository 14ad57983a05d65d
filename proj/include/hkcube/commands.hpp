#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

#include "hkcube/cube_groups.hpp"
#include "hkcube/cubespace.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

enum class OutputFormat { Json, Tsv };

struct CommandOptions {
  int d = -1;  // -1: per-command default
  std::uint64_t budget = kDefaultBudget;
  OutputFormat output = OutputFormat::Json;
  SampleOptions sampling;
  bool oracle = false;
  // demo-sturmian
  std::int64_t q = 89, p = 55, n_max = 10000, half = 2;
};

/// Keys: d, budget, output ("json" | "tsv"), exhaustive (bool), sample,
/// seed, oracle, q, p, n_max, half. Unknown keys are rejected.
CommandOptions options_from_json(const nlohmann::json& j);

struct CommandResult {
  bool pass = true;
  std::string output;
};

/// Runs one of: cubes, nrp, rp, order, tower, axioms, appendix,
/// demo-sturmian. `sys` may be null only for demo-sturmian. Throws Error
/// on budget, usage and module errors.
CommandResult run_command(const std::string& command, const SystemPtr& sys, const CommandOptions& opts);

bool is_known_command(const std::string& command);
bool command_needs_system(const std::string& command);

}  // namespace hkcube
