#include <doctest.h>

#include <bit>
#include <map>

#include "hkcube/cube_groups.hpp"
#include "hkcube/zoo.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

std::set<support::Tuple> members(const TupleGroup& t) {
  std::set<support::Tuple> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.insert(t.element(i).entries);
  return out;
}

// Coefficients g_F of the ordered product over upper faces, recovered from
// the evaluated tuple alone. Vertex v lies in exactly the upper faces whose
// fixed set is contained in v's support, and the face fixing exactly v's
// support is the only new factor at v; peel vertices by increasing weight.
std::map<std::uint32_t, Elem> peel(const FiniteGroup& g, const TupleElement& t, int d) {
  const auto order = order_upper_faces(d);
  std::map<std::uint32_t, Elem> coeff;
  std::vector<Vertex> by_weight(vertex_count(d));
  for (Vertex v = 0; v < by_weight.size(); ++v) by_weight[v] = v;
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [](Vertex a, Vertex b) { return std::popcount(a) < std::popcount(b); });
  for (Vertex v : by_weight) {
    Elem prefix = g.identity(), suffix = g.identity();
    bool after = false;
    for (const Face& f : order) {
      if (!f.contains(v)) continue;
      if (f.mask == v) {
        after = true;
        continue;
      }
      Elem& side = after ? suffix : prefix;
      side = g.mul(side, coeff.at(f.mask));
    }
    coeff[v] = g.mul(g.mul(g.inv(prefix), t.entries[v]), g.inv(suffix));
  }
  return coeff;
}

std::vector<GroupPtr> small_groups() {
  return {cyclic_group(2), cyclic_group(3), symmetric_group(3), dihedral_group(4), heisenberg_group(2)};
}

}  // namespace

TEST_CASE("Host-Kra and face groups of Z/2 at d = 2") {
  auto g = cyclic_group(2);
  CHECK(cube_group(g, 2, TupleGroupKind::HostKra)->size() == 8);
  CHECK(cube_group(g, 2, TupleGroupKind::Face)->size() == 4);
  CHECK(cube_group(g, 1, TupleGroupKind::HostKra)->size() == 4);
  CHECK(cube_group(g, 1, TupleGroupKind::Face)->size() == 2);
}

TEST_CASE("cube groups equal the naive closure over all hyperface elements") {
  for (const auto& g : small_groups())
    for (int d = 1; d <= 3; ++d) {
      if (d == 3 && g->order() > 3) continue;
      CAPTURE(g->order());
      CAPTURE(d);
      const std::size_t len = vertex_count(d);
      const auto hk = support::naive_tuple_span(*g, support::hk_oracle_generators(*g, d, false), len);
      const auto face = support::naive_tuple_span(*g, support::hk_oracle_generators(*g, d, true), len);
      CHECK(members(*cube_group(g, d, TupleGroupKind::HostKra)) == hk);
      CHECK(members(*cube_group(g, d, TupleGroupKind::Face)) == face);
      // The all-hyperface presentation over generators only.
      TupleGroup all(g, d, hk_generators_all_hyperfaces(*g, d), kDefaultBudget);
      CHECK(members(all) == hk);
    }
}

TEST_CASE("HK of an abelian group at d = 2 is the parallelogram group") {
  // For abelian G, HK^[2] = {(a, b, c, e) : a e = b c} (vertices 00,10,01,11).
  for (std::size_t n : {2, 3, 4, 5}) {
    auto g = cyclic_group(n);
    const auto hk = members(*cube_group(g, 2, TupleGroupKind::HostKra));
    std::size_t count = 0;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) {
          const Elem e = (b + c + n - a) % n;
          CHECK(hk.count({a, b, c, e}) == 1);
          ++count;
        }
    CHECK(hk.size() == count);
  }
}

TEST_CASE("membership and words") {
  auto g = symmetric_group(3);
  auto hk = cube_group(g, 2, TupleGroupKind::HostKra);
  const auto oracle = members(*hk);
  auto r = support::rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    TupleElement t{2, {}};
    for (int v = 0; v < 4; ++v) t.entries.push_back(static_cast<Elem>(r() % 6));
    CHECK(hk->contains(t) == (oracle.count(t.entries) == 1));
    CHECK(tuple_group_membership(g, t, TupleGroupKind::HostKra) == hk->contains(t));
    if (hk->contains(t)) {
      CHECK(evaluate_word(*g, hk->face_word_for(t), 2) == t);
    } else {
      CHECK(support::error_of([&] { hk->word_for(t); }) == ErrorCode::NotMember);
    }
  }
}

TEST_CASE("key commutator identity, S3 d = 2") {
  const auto rep = verify_key_commutator(*symmetric_group(3), 2);
  CHECK(rep.pass);
  CHECK(rep.exhaustive);
}

TEST_CASE("normal form agrees with the peeling oracle") {
  auto r = support::rng(31);
  for (const auto& g : {symmetric_group(3), heisenberg_group(2), dihedral_group(4)})
    for (int d = 1; d <= 3; ++d) {
      const auto faces = order_upper_faces(d);
      for (int trial = 0; trial < 60; ++trial) {
        FaceWord w;
        const int len = static_cast<int>(r() % 9);
        for (int i = 0; i < len; ++i) w.push_back({static_cast<Elem>(r() % g->order()), faces[r() % faces.size()]});
        const auto nf = normal_form(*g, w, d);
        REQUIRE(nf.size() == faces.size());
        const auto value = evaluate_word(*g, w, d);
        CHECK(evaluate_word(*g, nf, d) == value);
        const auto coeff = peel(*g, value, d);
        for (std::size_t i = 0; i < faces.size(); ++i) {
          CHECK(nf[i].face == faces[i]);
          CHECK(nf[i].h == coeff.at(faces[i].mask));
        }
      }
    }
}

TEST_CASE("appendix suites on S3 at d = 2") {
  auto g = symmetric_group(3);
  CHECK(normal_form_suite(*g, 2, 4).pass);
  const auto fh = factor_hk_suite(g, 2);
  CHECK(fh.pass);
  CHECK(fh.cases == 648);
  const auto dec = decomposition_suite(g, 2);
  CHECK(dec.pass);
  CHECK(dec.cases == 648);
  CHECK(face_group_ceiling_image(g, 2).pass);
}

TEST_CASE("factor_hk splits off the diagonal") {
  auto g = heisenberg_group(2);
  auto hk = cube_group(g, 2, TupleGroupKind::HostKra);
  auto face = cube_group(g, 2, TupleGroupKind::Face);
  for (std::size_t i = 0; i < hk->size(); ++i) {
    const auto t = hk->element(i);
    const auto f = factor_hk(g, t);
    CHECK(face->contains(f.face_part));
    CHECK(tuple_mul(*g, f.face_part, diagonal(*g, f.diagonal, 2)) == t);
    CHECK(f.diagonal == t.entries[0]);
  }
}

TEST_CASE("doubling inclusion") {
  for (const auto& g : {cyclic_group(2), symmetric_group(3)}) {
    CHECK(verify_doubling_inclusion(g, 1, true).pass);
    CHECK(verify_doubling_inclusion(g, 2, true).pass);
  }
}

TEST_CASE("ceiling and floor homomorphisms") {
  auto g = symmetric_group(3);
  auto hk3 = cube_group(g, 3, TupleGroupKind::HostKra);
  auto hk2 = cube_group(g, 2, TupleGroupKind::HostKra);
  for (std::size_t i = 0; i < hk3->size(); i += 97) {
    const auto t = hk3->element(i);
    CHECK(hk2->contains(ceiling_hom(t)));
    CHECK(hk2->contains(floor_hom(t)));
    CHECK(tuple_join(floor_hom(t), ceiling_hom(t)) == t);
  }
}

TEST_CASE("budget is enforced") {
  clear_cube_group_cache();
  CHECK(support::error_of([] { cube_group(symmetric_group(3), 3, TupleGroupKind::HostKra, 100); }) ==
        ErrorCode::BudgetExceeded);
}

TEST_CASE("filtered upper-face decomposition") {
  for (const auto& g : {cyclic_group(3), symmetric_group(3), heisenberg_group(2), dihedral_group(4)})
    for (int d = 1; d <= 3; ++d) {
      if (d == 3 && g->order() > 3) continue;
      const auto rep = filtered_decomposition_suite(g, d);
      CHECK(rep.pass);
    }
}
