// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hkcube/cube_groups.hpp"
#include "hkcube/cubespace.hpp"
#include "hkcube/error.hpp"
#include "hkcube/nrp.hpp"
#include "hkcube/zoo.hpp"

using namespace hkcube;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      note << " FAILED[" << what << "]";
    }
  }
};

// Runs `f`, checking the elapsed time against `limit` seconds.
template <class F>
double timed(Outcome& out, const std::string& what, double limit, F&& f) {
  const auto t0 = Clock::now();
  f();
  const double s = seconds_since(t0);
  out.require(s < limit, what + " took " + std::to_string(s) + "s");
  return s;
}

std::vector<Point> class_sizes(const Relation& r) {
  std::vector<Point> out;
  for (const auto& c : r.classes()) out.push_back(static_cast<Point>(c.size()));
  return out;
}

bool all_equal(const std::vector<Point>& v, std::size_t count, Point size) {
  if (v.size() != count) return false;
  for (Point s : v)
    if (s != size) return false;
  return true;
}

std::vector<std::string> catalog_up_to(std::size_t points) {
  std::vector<std::string> out;
  for (const auto& name : zoo_catalog())
    if (builtin_system(name)->size() <= points) out.push_back(name);
  return out;
}

FactorMap onto_cosets(const SystemPtr& reg, const Subgroup& h) {
  auto target = coset(reg->group_ptr(), h);
  FactorMap pi{reg, target, {}};
  for (Point x = 0; x < reg->size(); ++x) pi.map.push_back(target->act(x, 0));
  pi.validate();
  return pi;
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return generate_subgroup(g, z);
}

// ---------------------------------------------------------------------------

void abelian_triviality(Outcome& out) {
  double worst = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (int d = 1; d <= 2; ++d) {
      bool diag = false;
      worst = std::max(worst, timed(out, "rotation:" + std::to_string(n) + " d=" + std::to_string(d), 1.0, [&] {
        CubeSpace space(rotation(n));
        diag = nrp_relation(space, d).relation.is_diagonal();
      }));
      out.require(diag, "NRP^[" + std::to_string(d) + "](rotation:" + std::to_string(n) + ") = diagonal");
    }
  out.note << " rotation:2..8, d=1,2 all diagonal; slowest " << worst << "s";
}

void a5_dichotomy(Outcome& out) {
  timed(out, "a5", 300.0, [&] {
    auto s = a5_regular();
    CubeSpace space(s);
    out.require(q_relation(*s).is_diagonal(), "Q = diagonal");
    out.require(rp_relation(space, 1).is_diagonal(), "RP^[1] = diagonal");
    const auto nrp = nrp_relation(space, 1);
    out.require(nrp.relation == Relation::full(60), "NRP^[1] = X x X");
    out.require(nrp.relation.classes().size() == 1, "one class");
    out.require(nrp.states_visited <= 60ull * 60 * 60 * 60, "states <= 60^4");
    out.note << " Q and RP^[1] diagonal, NRP^[1] one class of 60, " << nrp.states_visited << " states";
  });
}

void nilsystem_order(Outcome& out) {
  timed(out, "heisenberg:2", 30.0, [&] {
    auto s = heisenberg_mod(2);
    CubeSpace space(s);
    const auto n1 = nrp_relation(space, 1).relation;
    out.require(all_equal(class_sizes(n1), 4, 2), "NRP^[1] has 4 classes of 2");
    const auto z = center(s->group());
    Relation cosets(s->size());
    for (Point x = 0; x < s->size(); ++x)
      for (Elem c : z.members) cosets.insert(x, s->group().mul(c, x));
    out.require(n1 == cosets, "classes are center cosets");
    out.require(nrp_relation(space, 2).relation.is_diagonal(), "NRP^[2] = diagonal");
    out.require(order_of_system(space, 3) == 2, "order 2");
  });
  const double s3 = timed(out, "heisenberg:3", 600.0, [&] {
    CubeSpace space(heisenberg_mod(3), std::uint64_t{1} << 24);
    const auto n1 = nrp_relation(space, 1).relation;
    out.require(all_equal(class_sizes(n1), 9, 3), "H3 NRP^[1] has 9 classes of 3");
    out.require(order_of_system(space, 3) == 2, "H3 order 2");
  });
  out.note << " H2: 4 classes of 2 (center cosets), NRP^[2] diagonal, order 2; H3: 9 classes of 3, order 2 (" << s3
           << "s)";
}

void nrp_equivalence(Outcome& out) {
  std::size_t checked = 0;
  std::vector<std::string> skipped;
  for (const auto& name : zoo_catalog()) {
    CubeSpace space(builtin_system(name));
    for (int d = 1; d <= 2; ++d) {
      try {
        const auto r = nrp_relation(space, d);
        out.require(verify_equivalence(r.relation, space.system()).pass, name + " d=" + std::to_string(d));
        ++checked;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        skipped.push_back(name + " d=" + std::to_string(d));
      }
    }
  }
  out.note << " " << checked << " (system, d) pairs are equivalences";
  if (!skipped.empty()) {
    out.note << "; over budget:";
    for (const auto& s : skipped) out.note << " " << s;
  }
}

void canonical_oracle(Outcome& out) {
  std::size_t checked = 0;
  for (const auto& name : catalog_up_to(8)) {
    CubeSpace space(builtin_system(name));
    for (int d = 1; d <= 2; ++d) {
      out.require(check_canonical_matches_nrp(space, d).pass, name + " d=" + std::to_string(d));
      ++checked;
    }
  }
  out.note << " nrp = canonical on " << checked << " (system, d) pairs with |X| <= 8";
}

void lifting(Outcome& out) {
  auto s = heisenberg_mod(2);
  const auto& g = s->group();
  const auto derived = commutator_subgroup(g, whole_group(g), whole_group(g));
  const FactorMap to_center = onto_cosets(s, center(g));
  const FactorMap to_ab = onto_cosets(s, derived);
  for (int d = 1; d <= 2; ++d) {
    out.require(verify_lifting(to_center, d).pass, "center quotient d=" + std::to_string(d));
    out.require(verify_lifting(to_ab, d).pass, "abelianization quotient d=" + std::to_string(d));
  }
  out.note << " H2 -> X/Z(G) and H2 -> X/[G,G], d=1,2";
}

void nilspace_axioms(Outcome& out) {
  std::size_t systems = 0;
  SampleOptions exhaustive;
  exhaustive.mode = SampleOptions::Mode::Exhaustive;
  for (const auto& name : catalog_up_to(8)) {
    CubeSpace space(builtin_system(name));
    out.require(check_ergodicity(space).pass, name + " ergodicity");
    for (int d = 2; d <= 3; ++d) {
      const auto c = check_completion(space, d, exhaustive);
      out.require(c.pass && c.exhaustive, name + " completion d=" + std::to_string(d));
      out.require(check_glueing(*space.cubes(d)).pass, name + " glueing d=" + std::to_string(d));
    }
    for (int d = 1; d <= 2; ++d) {
      const bool unique = check_uniqueness(*space.cubes(d + 1));
      const bool order_le_d = order_of_system(space, d).has_value();
      out.require(unique == order_le_d, name + " uniqueness at " + std::to_string(d + 1));
    }
    ++systems;
  }
  out.note << " " << systems << " systems: ergodic, exhaustive 2/3-completion, glueing d=2,3, uniqueness <-> order";
}

void tower_structure(Outcome& out) {
  CubeSpace space(heisenberg_mod(2));
  const Tower t = factor_tower(space, 3);
  out.require(t.order == 2, "order 2");
  out.require(t.levels.size() == 2, "two levels");
  if (t.levels.size() == 2) {
    const auto& top = t.levels[0];
    const auto& bottom = t.levels[1];
    out.require(top.system->size() == 8 && bottom.system->size() == 4, "8 -> 4 -> point");
    out.require(top.k_group && top.k_group->order() == 2 && top.abelian, "K_2 abelian of order 2");
    out.require(top.free && top.orbits_are_fibres, "K_2 free, orbits = fibres");
    out.require(bottom.k_group && bottom.k_group->order() == 4 && bottom.abelian, "K_1 abelian of order 4");
    out.require(bottom.free && bottom.orbits_are_fibres, "K_1 free, orbits = fibres");
  }
  out.require(t.final_abelian_group_system, "final quotient is an abelian group system");
  out.require(t.report.pass, "tower report");
  out.note << " X(8) -> Y(4) -> point, K_2 = Z/2, |K_1| = 4, final quotient abelian group system";
}

void appendix_algebra(Outcome& out) {
  auto s3 = symmetric_group(3);
  auto z2 = cyclic_group(2);
  const auto suite = [&](const std::string& name, const std::function<CheckReport()>& f) {
    CheckReport r;
    const double t = timed(out, name, 60.0, [&] { r = f(); });
    out.require(r.pass && r.exhaustive, name);
    out.note << " " << name << " " << r.cases << " cases " << t << "s;";
  };
  suite("key_commutator", [&] { return verify_key_commutator(*s3, 2); });
  suite("factor_hk", [&] { return factor_hk_suite(s3, 2); });
  suite("normal_form", [&] { return normal_form_suite(*s3, 2, 4); });
  suite("doubling Z/2", [&] { return verify_doubling_inclusion(z2, 1, true); });
  suite("doubling S3", [&] { return verify_doubling_inclusion(s3, 1, true); });
  suite("decomposition", [&] { return decomposition_suite(s3, 2); });
  out.require(cube_group(s3, 2, TupleGroupKind::HostKra)->size() == 648, "|HK^[2](S3)| = 648");
}

void elementary_chain(Outcome& out) {
  for (const auto& name : {"s3", "heisenberg:2"}) {
    CubeSpace space(builtin_system(name));
    out.require(elementary_chain_check(space, 2).pass, name);
  }
  out.note << " s3 and heisenberg:2, d = 1, 2";
}

void sturmian(Outcome& out) {
  CheckReport r;
  timed(out, "demo", 1.0, [&] { r = sturmian_orientation_demo(89, 55, 10000, 2); });
  out.require(r.pass, "orientation preserved");
  out.note << " q=89 p=55 n_max=10^4 half=2: " << r.cases << " (n, pair) cases preserved";
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Outcome&)> criteria[] = {
      {"abelian triviality", abelian_triviality},
      {"A5 dichotomy", a5_dichotomy},
      {"nilsystem order", nilsystem_order},
      {"NRP is an equivalence", nrp_equivalence},
      {"canonical relation oracle", canonical_oracle},
      {"lifting", lifting},
      {"nilspace axioms", nilspace_axioms},
      {"tower structure", tower_structure},
      {"appendix algebra", appendix_algebra},
      {"elementary chain", elementary_chain},
      {"cyclic order demo", sturmian},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.note << " exception: " << e.what();
    }
    const double s = seconds_since(t0);
    std::printf("[%s] %2d %s (%.2fs):%s\n", out.pass ? "PASS" : "FAIL", index, name, s, out.note.str().c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
