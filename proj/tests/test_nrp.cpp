#include <doctest.h>

#include "hkcube/nrp.hpp"
#include "hkcube/oracle.hpp"
#include "hkcube/zoo.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

std::vector<std::string> small_catalog() {
  std::vector<std::string> out;
  for (const auto& name : zoo_catalog())
    if (builtin_system(name)->size() <= 8) out.push_back(name);
  return out;
}

// Lower corner membership read off the tuple-group oracle.
Relation oracle_nrp(const FiniteSystem& s, int d) {
  const auto cubes = support::naive_cubes(s, d + 1);
  Relation r(s.size());
  for (Point x = 0; x < s.size(); ++x)
    for (Point y = 0; y < s.size(); ++y) {
      std::vector<Point> c(vertex_count(d + 1), x);
      c.back() = y;
      if (cubes.count(c)) r.insert_directed(x, y);
    }
  return r;
}

// Regular system onto G acting on the cosets of `h`, x -> x h.
FactorMap onto_cosets(const SystemPtr& reg, const Subgroup& h) {
  auto target = coset(reg->group_ptr(), h);
  FactorMap pi{reg, target, {}};
  for (Point x = 0; x < reg->size(); ++x) pi.map.push_back(target->act(x, 0));
  pi.validate();
  return pi;
}

}  // namespace

TEST_CASE("rotations have trivial NRP") {
  for (std::size_t n = 2; n <= 8; ++n) {
    CubeSpace space(rotation(n));
    for (int d = 1; d <= 2; ++d) CHECK(nrp_relation(space, d).relation.is_diagonal());
  }
}

TEST_CASE("NRP of the order-0 and one-point systems") {
  CubeSpace space(rotation(3));
  CHECK(nrp_relation(space, 0).relation == Relation::full(3));
  CubeSpace pt(rotation(1));
  CHECK(nrp_relation(pt, 1).relation.is_diagonal());
  CHECK(order_of_system(pt, 3) == 0);
}

TEST_CASE("NRP matches the tuple-group oracle") {
  for (const auto& name : small_catalog()) {
    CAPTURE(name);
    const auto s = builtin_system(name);
    CubeSpace space(s);
    for (int d = 1; d <= 2; ++d) {
      if (d == 2 && s->group().order() > 8) continue;
      CHECK(nrp_relation(space, d).relation == oracle_nrp(*s, d));
    }
  }
}

TEST_CASE("NRP is an equivalence equal to the canonical relation") {
  for (const auto& name : small_catalog()) {
    CAPTURE(name);
    CubeSpace space(builtin_system(name));
    for (int d = 1; d <= 2; ++d) {
      const auto nrp = nrp_relation(space, d);
      CHECK(nrp.minimal);
      CHECK(verify_equivalence(nrp.relation, space.system()).pass);
      CHECK(verify_alt_corner(space, d).pass);
      CHECK(check_canonical_matches_nrp(space, d).pass);
      if (d == 1 || space.system().group().order() <= 8) CHECK(oracle_nrp_check(space, d).pass);
    }
  }
}

TEST_CASE("Heisenberg NRP classes are center cosets") {
  auto s = heisenberg_mod(2);
  CubeSpace space(s);
  const auto z = support::center(s->group());
  Relation cosets(s->size());
  for (Point x = 0; x < s->size(); ++x)
    for (Elem c : z) cosets.insert(x, s->group().mul(c, x));
  const auto nrp1 = nrp_relation(space, 1).relation;
  CHECK(nrp1 == cosets);
  CHECK(nrp1.classes().size() == 4);
  CHECK(nrp_relation(space, 2).relation.is_diagonal());
  CHECK(order_of_system(space, 3) == 2);
}

TEST_CASE("lower central certificate agrees with computation") {
  for (const auto& name : {"heisenberg:2", "dihedral:4", "rotation:6", "s3", "coset:s3/1"}) {
    CAPTURE(name);
    CubeSpace space(builtin_system(name));
    const auto with = compute_order(space, 2, true);
    const auto without = compute_order(space, 2, false);
    CHECK(with.order == without.order);
    for (const auto& step : without.steps) CHECK(step.method == "computed");
  }
}

TEST_CASE("elementary chain") {
  for (const auto& name : {"s3", "heisenberg:2", "dihedral:5", "natural:symmetric:4"}) {
    CubeSpace space(builtin_system(name));
    CHECK(elementary_chain_check(space, 2).pass);
  }
}

TEST_CASE("RP is contained in NRP") {
  for (const auto& name : {"s3", "heisenberg:2", "rotation:4", "dihedral:4"}) {
    CAPTURE(name);
    CubeSpace space(builtin_system(name));
    for (int d = 1; d <= 2; ++d) {
      CHECK(check_rp_subset_nrp(space, d).pass);
      CHECK(rp_relation(space, d).is_diagonal());
    }
  }
  CubeSpace space(rotation(3));
  CHECK(rp_relation(space, 0) == Relation::full(3));
}

TEST_CASE("lifting through factor maps") {
  auto s = heisenberg_mod(2);
  const auto& g = s->group();
  const auto center = generate_subgroup(g, support::center(g));
  const auto derived = commutator_subgroup(g, whole_group(g), whole_group(g));
  for (const auto& pi : {onto_cosets(s, center), onto_cosets(s, derived)})
    for (int d = 1; d <= 2; ++d) CHECK(verify_lifting(pi, d).pass);
  auto s3 = builtin_system("s3");
  const auto a3 = commutator_subgroup(s3->group(), whole_group(s3->group()), whole_group(s3->group()));
  for (int d = 1; d <= 2; ++d) CHECK(verify_lifting(onto_cosets(s3, a3), d).pass);
}

TEST_CASE("maximality of the NRP quotient") {
  auto s = heisenberg_mod(2);
  CubeSpace space(s);
  const auto& g = s->group();
  const auto derived = commutator_subgroup(g, whole_group(g), whole_group(g));
  CHECK(verify_maximality(space, 1, onto_cosets(s, derived)).pass);
  FactorMap id{s, s, {}};
  for (Point x = 0; x < s->size(); ++x) id.map.push_back(x);
  CHECK(verify_maximality(space, 2, id).pass);
  CHECK(support::error_of([&] { verify_maximality(space, 1, id); }) == ErrorCode::TargetNotOrderD);
}

TEST_CASE("quotient by NRP has trivial NRP") {
  for (const auto& name : {"heisenberg:2", "s3", "dihedral:4"}) {
    CubeSpace space(builtin_system(name));
    const auto q = quotient_by_nrp(space, 1);
    CHECK(q.report.pass);
    CubeSpace qs(q.quotient.system);
    CHECK(nrp_relation(qs, 1).relation.is_diagonal());
  }
}

TEST_CASE("effective nilpotent quotient") {
  CubeSpace space(heisenberg_mod(2));
  const auto nq = effective_nilpotent_quotient(space, 2);
  CHECK(nq.h.group.order() == 8);
  CHECK(nq.lower_term_fixes_x);
  CHECK(nq.nilpotency_class == 2);
  CHECK(support::error_of([&] { effective_nilpotent_quotient(space, 1); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("factor tower of H2") {
  CubeSpace space(heisenberg_mod(2));
  const auto t = factor_tower(space, 3);
  CHECK(t.order == 2);
  REQUIRE(t.levels.size() == 2);
  CHECK(t.levels[0].system->size() == 8);
  CHECK(t.levels[0].k_group->order() == 2);
  CHECK(t.levels[1].system->size() == 4);
  CHECK(support::element_orders(*t.levels[1].k_group) == std::vector<std::size_t>{1, 2, 2, 2});
  for (const auto& l : t.levels) {
    CHECK(l.free);
    CHECK(l.orbits_are_fibres);
    CHECK(l.abelian);
    CHECK(l.commutes_with_g);
  }
  CHECK(t.projections_compose);
  CHECK(t.final_abelian_group_system);
  const auto j = tower_to_json(t);
  CHECK(j.at("levels").size() == 2);
}

TEST_CASE("factor tower of a rotation has one level") {
  CubeSpace space(rotation(6));
  const auto t = factor_tower(space, 3);
  CHECK(t.order == 1);
  REQUIRE(t.levels.size() == 1);
  CHECK(t.levels[0].k_group->order() == 6);
}

TEST_CASE("weakly mixing checks apply only to the one-point system") {
  CubeSpace pt(rotation(1));
  CHECK(weakly_mixing_checks(pt, 2).pass);
  CubeSpace s4(builtin_system("natural:symmetric:4"));
  CHECK(support::error_of([&] { weakly_mixing_checks(s4, 2); }) == ErrorCode::NotApplicable);
}

TEST_CASE("non-minimal input is flagged") {
  auto s = std::make_shared<const FiniteSystem>(
      FiniteSystem::from_generator_action(cyclic_group(2), 4, {{1, 0, 3, 2}}));
  CubeSpace space(s);
  const auto r = nrp_relation(space, 1);
  CHECK_FALSE(r.minimal);
  CHECK(r.warning.rfind("NOT-MINIMAL", 0) == 0);
}

TEST_CASE("relations round-trip through JSON and TSV is sorted") {
  auto s = builtin_system("s3");
  CubeSpace space(s);
  const auto r = nrp_relation(space, 1).relation;
  const auto j = relation_to_json(r, *s);
  CHECK(relation_from_json(nlohmann::json::parse(j.dump())) == r);
  const auto tsv = relation_to_tsv(r);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    const auto end = tsv.find('\n', pos);
    lines.push_back(tsv.substr(pos, end - pos));
    pos = end + 1;
  }
  CHECK(lines.size() == r.pair_count());
  std::vector<std::pair<Point, Point>> parsed;
  for (const auto& l : lines) {
    const auto tab = l.find('\t');
    parsed.emplace_back(std::stoul(l.substr(0, tab)), std::stoul(l.substr(tab + 1)));
  }
  CHECK(std::is_sorted(parsed.begin(), parsed.end()));
}

TEST_CASE("budget errors name the base point") {
  CubeSpace space(a5_regular(), 1000);
  try {
    nrp_relation(space, 1);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(std::string(e.what()).find("base point") != std::string::npos);
  }
}
