#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hkcube/cube.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Configuration random_config(int d, std::mt19937_64& r) {
  Configuration c;
  c.d = d;
  for (Vertex v = 0; v < vertex_count(d); ++v) c.vals.push_back(static_cast<Point>(r() % 7));
  return c;
}

}  // namespace

TEST_CASE("face counts") {
  CHECK(support::error_of([] { enumerate_faces(0, FaceFilter::All); }) == ErrorCode::InvalidDimension);
  for (int d = 1; d <= 5; ++d) {
    CHECK(enumerate_faces(d, FaceFilter::All).size() == ipow(3, d));
    CHECK(enumerate_faces(d, FaceFilter::Upper).size() == ipow(2, d));
    CHECK(enumerate_faces(d, FaceFilter::Lower).size() == ipow(2, d));
    CHECK(enumerate_faces(d, FaceFilter::Hyperface).size() == std::size_t(2 * d));
    CHECK(enumerate_faces(d, FaceFilter::UpperHyperface).size() == std::size_t(d));
    CHECK(enumerate_faces(d, FaceFilter::PureCeiling).size() == ipow(2, d - 1));
    CHECK(enumerate_faces(d, FaceFilter::Mixed).size() == ipow(2, d - 1));
  }
}

TEST_CASE("faces contain the vertices their constraints allow") {
  for (int d = 1; d <= 4; ++d)
    for (const Face& f : enumerate_faces(d, FaceFilter::All)) {
      std::size_t n = 0;
      for (Vertex v = 0; v < vertex_count(d); ++v) n += f.contains(v);
      CHECK(n == ipow(2, d - f.codim()));
      CHECK(face_vertices(f).size() == n);
    }
}

TEST_CASE("upper face order respects inclusion and puts pure ceilings first") {
  for (int d = 1; d <= 5; ++d) {
    const auto order = order_upper_faces(d);
    REQUIRE(order.size() == ipow(2, d));
    CHECK(order.front().codim() == d);
    CHECK(order.back() == Face::full(d));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) CHECK_FALSE(order[j].subset_of(order[i]));
    bool seen_mixed = false;
    for (const auto& f : order) {
      if (f.is_mixed()) seen_mixed = true;
      if (f.is_pure_ceiling()) CHECK_FALSE(seen_mixed);
    }
  }
}

TEST_CASE("morphism counts and composition") {
  for (int r = 0; r <= 2; ++r)
    for (int d = 0; d <= 3; ++d) CHECK(CubeMorphism::all(r, d).size() == ipow(2 + 2 * r, d));
  auto rng = support::rng(3);
  const auto fs = CubeMorphism::all(2, 3);
  const auto gs = CubeMorphism::all(2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& f = fs[rng() % fs.size()];
    const auto& g = gs[rng() % gs.size()];
    const auto fg = compose(f, g);
    for (Vertex v = 0; v < 4; ++v) CHECK(fg.apply(v) == f.apply(g.apply(v)));
    const auto c = random_config(3, rng);
    CHECK(apply_morphism(c, fg) == apply_morphism(apply_morphism(c, f), g));
  }
}

TEST_CASE("identity and reflection") {
  auto rng = support::rng(5);
  for (int d = 0; d <= 4; ++d) {
    const auto c = random_config(d, rng);
    CHECK(apply_morphism(c, CubeMorphism::identity(d)) == c);
    const auto refl = CubeMorphism::reflection(d);
    CHECK(apply_morphism(apply_morphism(c, refl), refl) == c);
    for (Vertex v = 0; v < vertex_count(d); ++v) CHECK(refl.apply(v) == (top_vertex(d) ^ v));
  }
}

TEST_CASE("corners") {
  const auto lo = corner(1, 2, 3, CornerKind::Lower);
  const auto up = corner(1, 2, 3, CornerKind::Upper);
  for (Vertex v = 0; v < 8; ++v) {
    CHECK(lo[v] == (v == 7 ? 2u : 1u));
    CHECK(up[v] == (v == 0 ? 1u : 2u));
  }
}

TEST_CASE("floor and ceiling split and join") {
  auto rng = support::rng(9);
  for (int d = 1; d <= 5; ++d) {
    const auto c = random_config(d, rng);
    const auto [fl, ce] = split_floor_ceiling(c);
    for (Vertex v = 0; v < vertex_count(d - 1); ++v) {
      CHECK(fl[v] == c[v]);
      CHECK(ce[v] == c[v + vertex_count(d - 1)]);
    }
    CHECK(join_floor_ceiling(fl, ce) == c);
  }
}

TEST_CASE("doubling deletes one coordinate") {
  auto rng = support::rng(13);
  for (int d = 1; d <= 4; ++d)
    for (int i = 1; i <= d + 1; ++i) {
      const auto c = random_config(d, rng);
      const auto dc = double_along(c, i);
      REQUIRE(dc.d == d + 1);
      for (Vertex v = 0; v < vertex_count(d + 1); ++v) {
        const Vertex low = v & ((1u << (i - 1)) - 1);
        const Vertex high = (v >> i) << (i - 1);
        CHECK(dc[v] == c[low | high]);
      }
    }
}

TEST_CASE("restriction to a face keeps free coordinates in order") {
  Configuration c;
  c.d = 3;
  c.vals = {0, 1, 2, 3, 4, 5, 6, 7};
  const auto r = restrict_to_face(c, Face::hyperface(3, 2, 1));
  CHECK(r.d == 2);
  CHECK(r.vals == std::vector<Point>{2, 3, 6, 7});
}
