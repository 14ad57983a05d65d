#pragma once

// Independent brute-force helpers for the unit tests. Nothing here calls the
// library's closure or cube machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hkcube/cube_groups.hpp"
#include "hkcube/error.hpp"
#include "hkcube/group.hpp"
#include "hkcube/system.hpp"

namespace support {

using hkcube::Elem;
using hkcube::FiniteGroup;
using hkcube::Point;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

template <class F>
std::optional<hkcube::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const hkcube::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Subgroup generated by `gens`: close {Id} under right multiplication.
inline std::set<Elem> naive_span(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::set<Elem> s{g.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem a : std::vector<Elem>(s.begin(), s.end()))
      for (Elem b : gens) grew |= s.insert(g.mul(a, b)).second;
  }
  return s;
}

using Tuple = std::vector<Elem>;

inline Tuple tuple_product(const FiniteGroup& g, const Tuple& a, const Tuple& b) {
  Tuple out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = g.mul(a[i], b[i]);
  return out;
}

inline std::set<Tuple> naive_tuple_span(const FiniteGroup& g, const std::vector<Tuple>& gens, std::size_t len) {
  std::set<Tuple> s{Tuple(len, g.identity())};
  std::vector<Tuple> frontier(s.begin(), s.end());
  while (!frontier.empty()) {
    std::vector<Tuple> next;
    for (const auto& a : frontier)
      for (const auto& b : gens) {
        auto c = tuple_product(g, a, b);
        if (s.insert(c).second) next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }
  return s;
}

/// h on the vertices with coordinate `pos` (0-based bit) equal to `value`.
inline Tuple hyperface_tuple(const FiniteGroup& g, Elem h, int d, int pos, int value) {
  Tuple t(std::size_t{1} << d, g.identity());
  for (std::size_t v = 0; v < t.size(); ++v)
    if (((v >> pos) & 1u) == static_cast<unsigned>(value)) t[v] = h;
  return t;
}

/// Generators of the Host-Kra group: every hyperface with every group
/// element, so no choice of generating set is involved.
inline std::vector<Tuple> hk_oracle_generators(const FiniteGroup& g, int d, bool face_only) {
  std::vector<Tuple> gens;
  for (int pos = 0; pos < d; ++pos)
    for (Elem h = 0; h < g.order(); ++h) {
      gens.push_back(hyperface_tuple(g, h, d, pos, 1));
      if (!face_only) gens.push_back(hyperface_tuple(g, h, d, pos, 0));
    }
  if (!face_only)
    for (Elem h = 0; h < g.order(); ++h) gens.push_back(Tuple(std::size_t{1} << d, h));
  return gens;
}

/// Orbit of the constant configurations under tuples acting vertexwise.
inline std::set<std::vector<Point>> naive_cubes(const hkcube::FiniteSystem& sys, int d) {
  const auto group = naive_tuple_span(sys.group(), hk_oracle_generators(sys.group(), d, false), std::size_t{1} << d);
  std::set<std::vector<Point>> out;
  for (Point x = 0; x < sys.size(); ++x)
    for (const auto& t : group) {
      std::vector<Point> c(t.size());
      for (std::size_t v = 0; v < t.size(); ++v) c[v] = sys.act(t[v], x);
      out.insert(c);
    }
  return out;
}

/// Elements commuting with everything.
inline std::vector<Elem> center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return z;
}

/// Sorted multiset of element orders, an isomorphism invariant that
/// separates the groups of order <= 8 used in the tests.
inline std::vector<std::size_t> element_orders(const FiniteGroup& g) {
  std::vector<std::size_t> out;
  for (Elem a = 0; a < g.order(); ++a) {
    std::size_t k = 1;
    for (Elem x = a; x != g.identity(); x = g.mul(x, a)) ++k;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace support
