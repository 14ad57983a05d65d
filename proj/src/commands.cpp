#include "hkcube/commands.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "hkcube/error.hpp"
#include "hkcube/nrp.hpp"
#include "hkcube/oracle.hpp"
#include "hkcube/zoo.hpp"

namespace hkcube {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 8> kCommands = {"cubes", "nrp", "rp", "order", "tower", "axioms", "appendix",
                                                  "demo-sturmian"};

// Cube listings above this size are left out of JSON output.
constexpr std::size_t kMaxListedCubes = 4096;

struct Run {
  json out = json::object();
  json checks = json::array();
  std::vector<std::string> tsv;
  bool pass = true;

  void add(const CheckReport& r) {
    pass = pass && r.pass;
    checks.push_back(r.to_json());
  }
};

json system_json(const FiniteSystem& sys) {
  return {{"name", sys.name()}, {"points", sys.size()}, {"group_order", sys.group().order()},
          {"minimal", is_minimal(sys)}};
}

std::string pairs_tsv(const Relation& r) { return relation_to_tsv(r); }

std::string checks_tsv(const json& checks) {
  std::string s;
  for (const auto& c : checks) {
    s += c.at("check").get<std::string>() + '\t' + c.at("status").get<std::string>() + '\t' +
         (c.at("exhaustive").get<bool>() ? "exhaustive" : "sampled") + '\t' +
         std::to_string(c.at("states_visited").get<std::uint64_t>()) + '\t' +
         std::to_string(c.at("cases").get<std::uint64_t>()) + '\n';
  }
  return s;
}

int dim_or(const CommandOptions& o, int fallback) {
  const int d = o.d < 0 ? fallback : o.d;
  if (d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "--d exceeds the supported maximum");
  return d;
}

void require_positive(int d, const char* command) {
  if (d < 1) raise(ErrorCode::InvalidDimension, std::string(command) + " needs --d >= 1");
}

// ---------------------------------------------------------------------------

void cmd_cubes(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d = dim_or(o, 2);
  const FiniteSystem& sys = space.system();
  const auto cubes = space.cubes(d);
  run.out["d"] = d;
  run.out["size"] = cubes->size();
  json slices = json::array();
  for (Point x = 0; x < sys.size(); ++x)
    slices.push_back({{"x", x}, {"label", sys.label(x)}, {"size", space.slice(d, x)->size()}});
  run.out["slices"] = slices;
  run.add(check_closure(space, d));
  run.add(check_slices(space, d));
  if (d >= 1) run.add(check_projections(space, d));
  if (is_minimal(sys)) run.add(check_hk_minimality(space, d));
  if (o.oracle) run.add(oracle_cubes_check(space, d));
  if (cubes->size() <= kMaxListedCubes) {
    json list = json::array();
    for (const auto& c : cubes->sorted()) list.push_back(configuration_to_json(c));
    run.out["cubes"] = list;
  } else {
    run.out["cubes_omitted"] = true;
  }
  for (const auto& c : cubes->sorted()) {
    std::string line;
    for (std::size_t i = 0; i < c.vals.size(); ++i) line += (i ? "\t" : "") + std::to_string(c.vals[i]);
    run.tsv.push_back(line + '\n');
  }
}

void cmd_nrp(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d = dim_or(o, 1);
  const FiniteSystem& sys = space.system();
  const NrpResult nrp = nrp_relation(space, d);
  run.out["d"] = d;
  run.out["relation"] = relation_to_json(nrp.relation, sys);
  run.out["states_visited"] = nrp.states_visited;
  if (!nrp.minimal) {
    // Outside the minimal setting only the literal relation is reported.
    run.out["warning"] = nrp.warning;
    run.tsv.push_back(pairs_tsv(nrp.relation));
    return;
  }
  run.add(verify_equivalence(nrp.relation, sys));
  run.add(verify_alt_corner(space, d));
  if (nrp.relation.is_equivalence() && is_invariant(sys, nrp.relation)) {
    const NrpQuotient q = quotient_by_nrp(space, d);
    run.add(q.report);
    run.out["quotient"] = {{"points", q.quotient.system->size()},
                           {"labels", q.quotient.system->labels()},
                           {"map", q.quotient.projection.map}};
  }
  if (o.oracle) {
    run.add(check_canonical_matches_nrp(space, d));
    run.add(oracle_nrp_check(space, d));
  }
  run.tsv.push_back(pairs_tsv(nrp.relation));
}

void cmd_rp(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d = dim_or(o, 1);
  const FiniteSystem& sys = space.system();
  std::uint64_t visited = 0;
  const Relation rp = rp_relation(space, d, &visited);
  run.out["d"] = d;
  run.out["relation"] = relation_to_json(rp, sys);
  run.out["states_visited"] = visited;
  run.out["proximal_pairs"] = proximal_relation(sys).pair_count();
  run.out["q_pairs"] = q_relation(sys).pair_count();
  run.add(check_rp_subset_nrp(space, d));
  if (is_minimal(sys) && d >= 1) run.add(elementary_chain_check(space, d));
  run.tsv.push_back(pairs_tsv(rp));
}

void cmd_order(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d_max = dim_or(o, 3);
  const OrderResult r = compute_order(space, d_max, true);
  run.out["d_max"] = d_max;
  run.out["order"] = r.order ? json(*r.order) : json(nullptr);
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back({{"d", s.d}, {"trivial", s.trivial}, {"method", s.method}});
  run.out["steps"] = steps;
  if (r.order) {
    const NilpotentQuotient nq = effective_nilpotent_quotient(space, *r.order);
    run.out["nilpotent_quotient"] = {
        {"lower_term_order", nq.lower_term.size()},
        {"lower_term_fixes_points", nq.lower_term_fixes_x},
        {"fixator_order", nq.fix.size()},
        {"group_order", nq.h.group.order()},
        {"nilpotency_class", nq.nilpotency_class ? json(*nq.nilpotency_class) : json(nullptr)}};
  }
  run.tsv.push_back("order\t" + (r.order ? std::to_string(*r.order) : std::string("none")) + '\n');
  for (const auto& s : r.steps)
    run.tsv.push_back(std::to_string(s.d) + '\t' + (s.trivial ? "trivial" : "nontrivial") + '\t' + s.method + '\n');
}

void cmd_tower(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d_max = dim_or(o, 3);
  const Tower t = factor_tower(space, d_max);
  run.out["d_max"] = d_max;
  run.out["tower"] = tower_to_json(t);
  run.add(t.report);
  for (const auto& l : t.levels)
    run.tsv.push_back(std::to_string(l.k) + '\t' + std::to_string(l.system->size()) + '\t' +
                      std::to_string(l.k_group ? l.k_group->order() : 0) + '\t' + (l.abelian ? "abelian" : "nonabelian") +
                      '\n');
}

void cmd_axioms(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d = dim_or(o, 2);
  require_positive(d, "axioms");
  const FiniteSystem& sys = space.system();
  run.out["d"] = d;
  run.add(check_ergodicity(space));
  run.add(check_cube_invariance(space, d, d, o.sampling));
  for (int r = 1; r <= d; ++r) {
    run.add(check_completion(space, r, o.sampling));
    run.add(check_glueing(*space.cubes(r)));
    run.add(check_projections(space, r));
  }
  std::vector<Vertex> corner_vertices;
  for (Vertex v = 0; v + 1 < vertex_count(d); ++v) corner_vertices.push_back(v);
  run.add(check_extension_property(space, d, corner_vertices));
  // (r+1)-uniqueness holds exactly when NRP^{[r]} is trivial.
  CheckReport uq;
  uq.check = "uniqueness_vs_nrp";
  json rows = json::array();
  for (int r = 0; r <= d; ++r) {
    const bool unique = check_uniqueness(*space.cubes(r + 1));
    const bool trivial = nrp_relation(space, r).relation.is_diagonal();
    ++uq.cases;
    rows.push_back({{"d", r + 1}, {"unique", unique}, {"nrp_trivial", trivial}});
    if (unique != trivial) uq.fail({{"d", r + 1}, {"unique", unique}, {"nrp_trivial", trivial}});
  }
  uq.details["levels"] = rows;
  run.add(uq);
  if (!is_minimal(sys)) run.out["warning"] = "NOT-MINIMAL: axioms checked on the union of constant orbits";
}

void cmd_appendix(Run& run, CubeSpace& space, const CommandOptions& o) {
  const int d = dim_or(o, 2);
  require_positive(d, "appendix");
  const GroupPtr& g = space.system().group_ptr();
  run.out["d"] = d;
  run.out["group_order"] = g->order();
  std::uint64_t seed = o.sampling.seed;
  run.add(verify_key_commutator(*g, d, o.sampling.samples, seed));
  run.add(face_group_ceiling_image(g, d, o.budget));
  if (d >= 2) run.add(verify_doubling_inclusion(g, d - 1, true, o.budget));
  run.add(normal_form_suite(*g, d, 4));
  run.add(factor_hk_suite(g, d, o.budget));
  run.add(decomposition_suite(g, d, o.budget));
  run.add(filtered_decomposition_suite(g, d, o.budget));
}

void cmd_sturmian(Run& run, const CommandOptions& o) {
  const CheckReport r = sturmian_orientation_demo(o.q, o.p, o.n_max, o.half);
  run.out["parameters"] = {{"q", o.q}, {"p", o.p}, {"n_max", o.n_max}, {"half", o.half}};
  run.add(r);
}

}  // namespace

bool is_known_command(const std::string& command) {
  return std::find(kCommands.begin(), kCommands.end(), command) != kCommands.end();
}

bool command_needs_system(const std::string& command) { return command != "demo-sturmian"; }

CommandOptions options_from_json(const json& j) {
  CommandOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) raise(ErrorCode::ParseError, "options must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "d") {
        o.d = v.get<int>();
      } else if (key == "budget") {
        o.budget = v.get<std::uint64_t>();
      } else if (key == "output") {
        const auto s = v.get<std::string>();
        if (s == "json") o.output = OutputFormat::Json;
        else if (s == "tsv") o.output = OutputFormat::Tsv;
        else raise(ErrorCode::InvalidParameter, "output must be json or tsv");
      } else if (key == "exhaustive") {
        if (v.get<bool>()) o.sampling.mode = SampleOptions::Mode::Exhaustive;
      } else if (key == "sample") {
        o.sampling.mode = SampleOptions::Mode::Sample;
        o.sampling.samples = v.get<std::uint64_t>();
      } else if (key == "seed") {
        o.sampling.seed = v.get<std::uint64_t>();
      } else if (key == "oracle") {
        o.oracle = v.get<bool>();
      } else if (key == "q") {
        o.q = v.get<std::int64_t>();
      } else if (key == "p") {
        o.p = v.get<std::int64_t>();
      } else if (key == "n_max") {
        o.n_max = v.get<std::int64_t>();
      } else if (key == "half") {
        o.half = v.get<std::int64_t>();
      } else {
        raise(ErrorCode::InvalidParameter, "unknown option '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("options: ") + e.what());
  }
  if (o.sampling.mode == SampleOptions::Mode::Sample && o.sampling.samples == 0)
    raise(ErrorCode::InvalidParameter, "sample count must be positive");
  return o;
}

CommandResult run_command(const std::string& command, const SystemPtr& sys, const CommandOptions& opts) {
  if (!is_known_command(command)) raise(ErrorCode::InvalidParameter, "unknown command '" + command + "'");
  Run run;
  run.out["command"] = command;
  if (command == "demo-sturmian") {
    cmd_sturmian(run, opts);
  } else {
    if (!sys) raise(ErrorCode::InvalidSystem, command + " needs a system");
    run.out["system"] = system_json(*sys);
    CubeSpace space(sys, opts.budget);
    if (command == "cubes") cmd_cubes(run, space, opts);
    else if (command == "nrp") cmd_nrp(run, space, opts);
    else if (command == "rp") cmd_rp(run, space, opts);
    else if (command == "order") cmd_order(run, space, opts);
    else if (command == "tower") cmd_tower(run, space, opts);
    else if (command == "axioms") cmd_axioms(run, space, opts);
    else cmd_appendix(run, space, opts);
  }
  run.out["checks"] = run.checks;
  run.out["verdict"] = run.pass ? "PASS" : "FAIL";

  CommandResult res;
  res.pass = run.pass;
  if (opts.output == OutputFormat::Json) {
    res.output = run.out.dump(2) + '\n';
  } else {
    for (const auto& line : run.tsv) res.output += line;
    res.output += checks_tsv(run.checks);
    res.output += std::string("verdict\t") + (run.pass ? "PASS" : "FAIL") + '\n';
  }
  return res;
}

}  // namespace hkcube
