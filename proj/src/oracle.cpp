#include "hkcube/oracle.hpp"

#include "hkcube/error.hpp"
#include "hkcube/nrp.hpp"

namespace hkcube {

using nlohmann::json;

std::set<std::vector<Point>> naive_cubes(const FiniteSystem& sys, int d, std::uint64_t budget) {
  const FiniteGroup& g = sys.group();
  const auto letters = hk_generators_all_hyperfaces(g, d, GeneratorMode::Elements);
  std::set<std::vector<Point>> cubes;
  std::vector<std::vector<Point>> frontier;
  for (Point x = 0; x < sys.size(); ++x) {
    frontier.emplace_back(vertex_count(d), x);
    cubes.insert(frontier.back());
  }
  // Fixpoint: apply every letter to every newly found configuration until
  // nothing new appears.
  while (!frontier.empty()) {
    std::vector<std::vector<Point>> next;
    for (const auto& c : frontier)
      for (const FaceLetter& l : letters) {
        std::vector<Point> img = c;
        for (Vertex v = 0; v < img.size(); ++v)
          if (l.face.contains(v)) img[v] = sys.act(l.h, img[v]);
        if (cubes.insert(img).second) {
          if (cubes.size() > budget) raise(ErrorCode::BudgetExceeded, "naive cube closure exceeds budget");
          next.push_back(std::move(img));
        }
      }
    frontier = std::move(next);
  }
  return cubes;
}

Relation naive_nrp(const FiniteSystem& sys, int d, std::uint64_t budget) {
  const auto cubes = naive_cubes(sys, d + 1, budget);
  Relation r(sys.size());
  for (Point x = 0; x < sys.size(); ++x)
    for (Point y = 0; y < sys.size(); ++y) {
      std::vector<Point> c(vertex_count(d + 1), x);
      c.back() = y;
      if (cubes.count(c)) r.insert_directed(x, y);
    }
  return r;
}

CheckReport oracle_cubes_check(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "oracle_cubes";
  rep.details["d"] = d;
  const auto naive = naive_cubes(space.system(), d, space.budget());
  const auto packed = space.cubes(d);
  for (const auto& c : naive) {
    ++rep.cases;
    if (!packed->contains(std::span<const Point>(c))) rep.fail({{"missing_from_packed", c}});
  }
  if (naive.size() != packed->size()) rep.fail({{"naive", naive.size()}, {"packed", packed->size()}});
  rep.states_visited = naive.size() + packed->size();
  rep.details["size"] = packed->size();
  return rep;
}

CheckReport oracle_nrp_check(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "oracle_nrp";
  rep.details["d"] = d;
  const auto nrp = nrp_relation(space, d);
  const auto naive = naive_nrp(space.system(), d, space.budget());
  const auto canon = canonical_relation(space, d);
  const std::size_t n = space.system().size();
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      ++rep.cases;
      const bool a = nrp.relation.contains(x, y), b = naive.contains(x, y), c = canon.contains(x, y);
      if (a != b || a != c) rep.fail({{"pair", {x, y}}, {"nrp", a}, {"naive", b}, {"canonical", c}});
    }
  rep.states_visited = nrp.states_visited;
  return rep;
}

}  // namespace hkcube
