#include <doctest.h>

#include "hkcube/group.hpp"
#include "hkcube/zoo.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

std::vector<GroupPtr> sample_groups() {
  return {cyclic_group(1), cyclic_group(6),   symmetric_group(3), dihedral_group(4),
          heisenberg_group(2), heisenberg_group(3), alternating_group(4), symmetric_group(4)};
}

std::vector<std::size_t> series_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& s : lower_central_series(g)) out.push_back(s.size());
  return out;
}

}  // namespace

TEST_CASE("cyclic group table") {
  auto g = cyclic_group(5);
  CHECK(g->order() == 5);
  CHECK(g->is_abelian());
  for (Elem a = 0; a < 5; ++a)
    for (Elem b = 0; b < 5; ++b) CHECK(g->mul(a, b) == (a + b) % 5);
  CHECK(g->inv(2) == 3);
}

TEST_CASE("S3 from permutations") {
  auto g = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, 3);
  CHECK(g.order() == 6);
  CHECK_FALSE(g.is_abelian());
  CHECK(series_sizes(g) == std::vector<std::size_t>{6, 3});
  CHECK_FALSE(nilpotency_class(g).has_value());
  CHECK(lower_central_term(g, 5).size() == 3);
  CHECK(abelianization(g).group.order() == 2);
  CHECK(g.find_permutation({0, 1, 2}) == g.identity());
}

TEST_CASE("lower central series of nilpotent groups") {
  CHECK(series_sizes(*heisenberg_group(2)) == std::vector<std::size_t>{8, 2, 1});
  CHECK(series_sizes(*heisenberg_group(3)) == std::vector<std::size_t>{27, 3, 1});
  CHECK(nilpotency_class(*heisenberg_group(3)) == 2);
  CHECK(nilpotency_class(*dihedral_group(4)) == 2);
  CHECK(nilpotency_class(*cyclic_group(7)) == 1);
  CHECK(nilpotency_class(*cyclic_group(1)) == 0);
  CHECK(support::error_of([] { lower_central_term(*cyclic_group(2), 0); }) == ErrorCode::InvalidIndex);
}

TEST_CASE("the second lower central term of Heisenberg groups is the center") {
  for (std::size_t p : {2, 3, 5}) {
    auto g = heisenberg_group(p);
    CHECK(lower_central_term(*g, 2).members == support::center(*g));
  }
}

TEST_CASE("abelianization orders") {
  CHECK(abelianization(*heisenberg_group(2)).group.order() == 4);
  CHECK(abelianization(*heisenberg_group(3)).group.order() == 9);
  CHECK(abelianization(*dihedral_group(4)).group.order() == 4);
  CHECK(abelianization(*alternating_group(4)).group.order() == 3);
  CHECK(abelianization(*a5_group()).group.order() == 1);
  CHECK(is_perfect(*a5_group()));
  CHECK_FALSE(is_perfect(*symmetric_group(3)));
}

TEST_CASE("generate_subgroup matches naive closure on random generator sets") {
  auto r = support::rng(7);
  for (const auto& g : sample_groups()) {
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g->order() - 1));
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Elem> gens;
      const int k = 1 + trial % 3;
      for (int i = 0; i < k; ++i) gens.push_back(pick(r));
      const auto sub = generate_subgroup(*g, gens);
      const auto oracle = support::naive_span(*g, gens);
      CHECK(sub.members == std::vector<Elem>(oracle.begin(), oracle.end()));
      CHECK(g->order() % sub.size() == 0);
    }
  }
}

TEST_CASE("normality and quotients agree with conjugation closure") {
  auto r = support::rng(11);
  for (const auto& g : sample_groups()) {
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g->order() - 1));
    for (int trial = 0; trial < 10; ++trial) {
      const auto sub = generate_subgroup(*g, std::vector<Elem>{pick(r)});
      bool oracle = true;
      for (Elem a = 0; a < g->order() && oracle; ++a)
        for (Elem n : sub.members) oracle = oracle && sub.contains(g->mul(g->mul(a, n), g->inv(a)));
      CHECK(is_normal(*g, sub) == oracle);
      if (oracle) {
        const auto q = quotient_group(*g, sub);
        CHECK(q.group.order() * sub.size() == g->order());
        CHECK(is_homomorphism(*g, q.group, q.map));
      } else {
        CHECK(support::error_of([&] { quotient_group(*g, sub); }) == ErrorCode::NotNormal);
      }
    }
  }
}

TEST_CASE("commutator subgroup of S4 is A4") {
  auto g = symmetric_group(4);
  const auto c = commutator_subgroup(*g, whole_group(*g), whole_group(*g));
  CHECK(c.size() == 12);
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem b = 0; b < g->order(); ++b) CHECK(c.contains(commutator(*g, a, b)));
}

TEST_CASE("table validation") {
  // 0 1 / 1 1 has no inverse for 1.
  CHECK(support::error_of([] { FiniteGroup::from_table(2, {0, 1, 1, 1}); }) == ErrorCode::InvalidSystem);
  CHECK(support::error_of([] { FiniteGroup::from_table(2, {0, 1, 1, 2}); }) == ErrorCode::InvalidElement);
  CHECK(support::error_of([] { FiniteGroup::from_table(2, {0, 1}); }) == ErrorCode::InvalidParameter);
  CHECK(support::error_of([] { FiniteGroup::from_table(0, {}); }) == ErrorCode::InvalidParameter);
  // A quasigroup that is not associative: x*y = (2x + 2y) mod 3 has no
  // identity, x*y = (x - y) mod 3 has only a right identity.
  std::vector<Elem> sub;
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) sub.push_back((x + 3 - y) % 3);
  CHECK(support::error_of([&] { FiniteGroup::from_table(3, sub); }) == ErrorCode::InvalidSystem);
  CHECK(support::error_of([] { FiniteGroup::from_permutations({{0, 0}}, 2); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("declared generators must generate") {
  std::vector<Elem> z4;
  for (Elem x = 0; x < 4; ++x)
    for (Elem y = 0; y < 4; ++y) z4.push_back((x + y) % 4);
  CHECK(support::error_of([&] { FiniteGroup::from_table(4, z4, {}, {2}); }) == ErrorCode::InvalidParameter);
  CHECK(FiniteGroup::from_table(4, z4, {}, {3}).generators() == std::vector<Elem>{3});
}

TEST_CASE("cycle notation") {
  CHECK(cycle_string({0, 1, 2}) == "()");
  CHECK(cycle_string({1, 2, 0, 4, 3}) == "(1 2 3)(4 5)");
}

TEST_CASE("direct product") {
  auto g = direct_product({cyclic_group(2), symmetric_group(3)});
  CHECK(g->order() == 12);
  CHECK(abelianization(*g).group.order() == 4);
  CHECK(support::error_of([] { direct_product({}); }) == ErrorCode::InvalidParameter);
}
