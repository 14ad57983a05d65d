// Command-line driver over the C interface.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "hkcube/hkcube.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string system;
  std::optional<int> d;
  std::optional<std::uint64_t> budget;
  std::string output = "json";
  bool exhaustive = false;
  std::optional<std::uint64_t> sample;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  std::optional<std::int64_t> q, p, n_max, half;
};

int exit_for(hk_status s) { return s == HK_ERR_INTERNAL_INVARIANT ? kExitFail : kExitUsage; }

int report_error(hk_status s) {
  std::cerr << "error: " << hk_last_error() << '\n';
  return exit_for(s);
}

nlohmann::json options_json(const Flags& f) {
  nlohmann::json j = nlohmann::json::object();
  j["output"] = f.output;
  if (f.d) j["d"] = *f.d;
  if (f.budget) j["budget"] = *f.budget;
  if (f.exhaustive) j["exhaustive"] = true;
  if (f.sample) j["sample"] = *f.sample;
  if (f.seed) j["seed"] = *f.seed;
  if (f.oracle) j["oracle"] = true;
  if (f.q) j["q"] = *f.q;
  if (f.p) j["p"] = *f.p;
  if (f.n_max) j["n_max"] = *f.n_max;
  if (f.half) j["half"] = *f.half;
  return j;
}

int run(const std::string& command, const Flags& f) {
  hk_system* sys = nullptr;
  if (command != "demo-sturmian") {
    if (f.system.empty()) {
      std::cerr << "error: " << command << " needs --system\n";
      return kExitUsage;
    }
    const hk_status s = hk_system_load(f.system.c_str(), &sys);
    if (s != HK_OK) return report_error(s);
  }
  char* out = nullptr;
  int verdict = 0;
  const std::string opts = options_json(f).dump();
  const hk_status s = hk_run(sys, command.c_str(), opts.c_str(), &out, &verdict);
  hk_system_free(sys);
  if (s != HK_OK) return report_error(s);
  std::fputs(out, stdout);
  hk_string_free(out);
  return verdict == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cube structures and nilpotent regionally proximal relations of finite group actions"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;

  app.add_option("--system", f.system, "catalog name or config file");
  app.add_option("--d", f.d, "dimension / relation order");
  app.add_option("--budget", f.budget, "maximum number of stored configurations per cube set");
  app.add_option("--output", f.output, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  auto* exhaustive = app.add_flag("--exhaustive", f.exhaustive, "force exhaustive checks");
  app.add_option("--sample", f.sample, "sample count for randomised checks")->excludes(exhaustive);
  app.add_option("--seed", f.seed, "random seed for sampled checks");
  app.add_flag("--oracle", f.oracle, "run brute-force cross-checks");
  app.add_option("--q", f.q, "demo-sturmian: modulus");
  app.add_option("--p", f.p, "demo-sturmian: rotation step");
  app.add_option("--n-max", f.n_max, "demo-sturmian: number of iterates");
  app.add_option("--half", f.half, "demo-sturmian: arc length");

  std::string command;
  const std::pair<const char*, const char*> commands[] = {
      {"cubes", "cube sets C^[d] and their base-point slices"},
      {"nrp", "NRP^[d], its quotient and the verification suite"},
      {"rp", "finite RP^[d] and its inclusion in NRP^[d]"},
      {"order", "order of the system up to --d"},
      {"tower", "factor tower with structure groups"},
      {"axioms", "cube invariance, completion, glueing, extension, uniqueness"},
      {"appendix", "cube-group algebra checks on the acting group"},
      {"demo-sturmian", "cyclic-order preservation on Z/q"},
      {"catalog", "list catalog systems"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&command, n = std::string(name)] { command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (command == "catalog") {
    char* out = nullptr;
    const hk_status s = hk_catalog(&out);
    if (s != HK_OK) return report_error(s);
    std::fputs(out, stdout);
    hk_string_free(out);
    return kExitPass;
  }
  return run(command, f);
}
