#include <doctest.h>

#include "hkcube/system.hpp"
#include "hkcube/zoo.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

// Z/2 swapping 0<->1 and 2<->3: two orbits.
SystemPtr two_orbits() {
  return std::make_shared<const FiniteSystem>(FiniteSystem::from_generator_action(cyclic_group(2), 4, {{1, 0, 3, 2}}));
}

}  // namespace

TEST_CASE("action validation") {
  auto z2 = cyclic_group(2);
  CHECK(support::error_of([&] { FiniteSystem(z2, 2, {0, 1, 0, 0}); }) == ErrorCode::InvalidSystem);
  CHECK(support::error_of([&] { FiniteSystem(z2, 2, {1, 0, 1, 0}); }) == ErrorCode::InvalidSystem);
  CHECK(support::error_of([&] { FiniteSystem(z2, 2, {0, 1}); }) == ErrorCode::InvalidSystem);
  // A 3-cycle cannot represent an element of order 2.
  CHECK(support::error_of([&] { FiniteSystem::from_generator_action(z2, 3, {{1, 2, 0}}); }) ==
        ErrorCode::InvalidSystem);
  CHECK(support::error_of([&] { FiniteSystem::from_generator_action(z2, 3, {}); }) == ErrorCode::InvalidSystem);
}

TEST_CASE("orbits and minimality") {
  const auto s = two_orbits();
  CHECK_FALSE(is_minimal(*s));
  CHECK(orbits(*s) == std::vector<std::vector<Point>>{{0, 1}, {2, 3}});
  CHECK(orbit(*s, 3) == std::vector<Point>{2, 3});
  for (const auto& name : zoo_catalog()) CHECK(is_minimal(*builtin_system(name)));
}

TEST_CASE("diagonal products") {
  auto r = rotation(3);
  const auto p = product_system(*r, 2);
  CHECK(p.size() == 9);
  CHECK(orbits(p).size() == 3);
  CHECK(diagonal_orbit_sizes(*r, 3) == std::vector<std::size_t>(9, 3));
  CHECK_FALSE(is_transitive_of_all_orders(*r, 2));
  CHECK(is_transitive_of_all_orders(*rotation(1), 3));
}

TEST_CASE("proximality for finite actions is trivial") {
  for (const auto& name : {"s3", "heisenberg:2", "natural:symmetric:4", "rotation:5", "coset:s3/1"}) {
    const auto s = builtin_system(name);
    CHECK(proximal_relation(*s).is_diagonal());
    CHECK(q_relation(*s).is_diagonal());
    CHECK(q_eq_relation(*s).is_diagonal());
  }
}

TEST_CASE("relations") {
  const auto r = Relation::from_classes({0, 1, 0, 2, 1});
  CHECK(r.is_equivalence());
  CHECK(r.pair_count() == 4 + 4 + 1);
  CHECK(r.classes() == std::vector<std::vector<Point>>{{0, 2}, {1, 4}, {3}});
  Relation t(3);
  t.insert(0, 1);
  t.insert(1, 2);
  CHECK(t.is_symmetric());
  CHECK_FALSE(t.is_transitive());
  CHECK_FALSE(t.is_reflexive());
  CHECK(Relation::diagonal(3).subset_of(Relation::full(3)));
  Relation d(2);
  d.insert_directed(0, 1);
  CHECK_FALSE(d.is_symmetric());
}

TEST_CASE("random partitions build equivalences") {
  auto rng = support::rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::size_t> cls(n);
    for (auto& c : cls) c = rng() % 4;
    const auto r = Relation::from_classes(cls);
    CHECK(r.is_equivalence());
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) CHECK(r.contains(x, y) == (cls[x] == cls[y]));
  }
}

TEST_CASE("quotient by center cosets is an abelian group system") {
  auto s = heisenberg_mod(2);
  const auto z = support::center(s->group());
  // Regular action: point x is the group element x.
  Relation r(s->size());
  for (Point x = 0; x < s->size(); ++x)
    for (Elem c : z) r.insert(x, s->group().mul(c, x));
  REQUIRE(r.is_equivalence());
  const auto q = quotient_system(s, r);
  CHECK(q.system->size() == 4);
  q.projection.validate();
  const auto ab = check_abelian_group_system(*q.system);
  CHECK(ab.is_abelian_group_system);
  REQUIRE(ab.group.has_value());
  CHECK(support::element_orders(*ab.group) == std::vector<std::size_t>{1, 2, 2, 2});
  CHECK_FALSE(check_abelian_group_system(*s).is_abelian_group_system);
  CHECK(check_abelian_group_system(*rotation(6)).is_abelian_group_system);
}

TEST_CASE("quotient preconditions") {
  auto s = rotation(4);
  Relation r(4);
  r.insert(0, 1);
  CHECK(support::error_of([&] { quotient_system(s, r); }) == ErrorCode::NotEquivalence);
  CHECK(support::error_of([&] { quotient_system(s, Relation::from_classes({0, 0, 1, 2})); }) ==
        ErrorCode::NotInvariant);
  CHECK(support::error_of([&] { check_abelian_group_system(*two_orbits()); }) == ErrorCode::NotMinimal);
}

TEST_CASE("factor map validation") {
  auto s = rotation(4);
  auto t = rotation(2);
  auto z4 = s->group_ptr();
  // rotation:2 has a different group object, so build the target over Z/4.
  auto t4 = std::make_shared<const FiniteSystem>(FiniteSystem::from_generator_action(z4, 2, {{1, 0}}));
  FactorMap ok{s, t4, {0, 1, 0, 1}};
  ok.validate();
  FactorMap bad{s, t4, {0, 0, 1, 1}};
  CHECK(support::error_of([&] { bad.validate(); }) == ErrorCode::InvalidSystem);
  FactorMap other{s, t, {0, 1, 0, 1}};
  CHECK(support::error_of([&] { other.validate(); }) == ErrorCode::InvalidSystem);
}

TEST_CASE("fixator is the core of the stabilizer") {
  // S3 on the cosets of a subgroup of order 2: faithful.
  CHECK(fixator(*builtin_system("coset:s3/1")).size() == 1);
  // H2 on the quotient by its center fixes exactly the center.
  auto s = heisenberg_mod(2);
  const auto half = coset(s->group_ptr(), generate_subgroup(s->group(), support::center(s->group())));
  CHECK(fixator(*half).size() == 2);
}
