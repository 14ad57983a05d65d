#include "hkcube/cubespace.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

#include "hkcube/error.hpp"

namespace hkcube {

using nlohmann::json;

namespace {

constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 22;

std::vector<TupleElement> hk_tuples(const FiniteGroup& g, int d) {
  return to_tuples(g, cube_group_generators(g, d, TupleGroupKind::HostKra), d);
}

std::vector<TupleElement> face_tuples(const FiniteGroup& g, int d) {
  return to_tuples(g, cube_group_generators(g, d, TupleGroupKind::Face), d);
}

void act_on(const FiniteSystem& sys, const TupleElement& t, std::span<const Point> in, std::span<Point> out) {
  for (std::size_t v = 0; v < in.size(); ++v) out[v] = sys.act(t.entries[v], in[v]);
}

// |X|^k, saturating at 2^63.
std::uint64_t power_saturating(std::uint64_t base, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 63) / base) return std::uint64_t{1} << 63;
    r *= base;
  }
  return r;
}

bool use_exhaustive(const SampleOptions& opts, std::uint64_t work) {
  switch (opts.mode) {
    case SampleOptions::Mode::Exhaustive: return true;
    case SampleOptions::Mode::Sample: return false;
    case SampleOptions::Mode::Auto: break;
  }
  return work <= kExhaustiveLimit;
}

json morphism_to_json(const CubeMorphism& f) {
  json coords = json::array();
  for (const Coord& c : f.coords) {
    switch (c.kind) {
      case CoordKind::Const0: coords.push_back("0"); break;
      case CoordKind::Const1: coords.push_back("1"); break;
      case CoordKind::Proj: coords.push_back("w" + std::to_string(c.index)); break;
      case CoordKind::NegProj: coords.push_back("1-w" + std::to_string(c.index)); break;
    }
  }
  return {{"r", f.r}, {"d", f.d}, {"coords", coords}};
}

// Index of v inside the face {w_j = 0}: drop bit j-1.
std::uint32_t index_in_lower_face(Vertex v, int j) {
  const std::uint32_t low = v & ((1u << (j - 1)) - 1);
  const std::uint32_t high = v >> j;
  return low | (high << (j - 1));
}

}  // namespace

CubeSet::CubeSet(int d, std::size_t points, std::uint64_t budget, std::string provenance)
    : d_(d), store_(vertex_count(d), std::max<std::size_t>(points, 1), budget), provenance_(std::move(provenance)) {}

bool CubeSet::contains(const Configuration& c) const { return c.d == d_ && store_.contains(c.vals); }

Configuration CubeSet::at(std::size_t i) const {
  Configuration c{d_, std::vector<Point>(vertex_count(d_))};
  store_.get(static_cast<std::uint32_t>(i), c.vals);
  return c;
}

std::vector<Configuration> CubeSet::sorted() const {
  std::vector<Configuration> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::string CubeSet::to_json_lines() const {
  std::string out;
  for (const Configuration& c : sorted()) {
    out += configuration_to_json(c).dump();
    out += '\n';
  }
  return out;
}

json configuration_to_json(const Configuration& c) { return json(c.vals); }

Configuration configuration_from_json(const json& j) {
  if (!j.is_array()) raise(ErrorCode::ParseError, "configuration must be a JSON array");
  Configuration c;
  c.vals = j.get<std::vector<Point>>();
  const auto n = c.vals.size();
  if (n == 0 || !std::has_single_bit(n)) raise(ErrorCode::ParseError, "configuration length must be a power of two");
  c.d = std::countr_zero(n);
  return c;
}

CubeSet cube_set_from_json_lines(const std::string& text, int d, std::size_t points, std::uint64_t budget) {
  CubeSet out(d, points, budget, "json");
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Configuration c;
    try {
      c = configuration_from_json(json::parse(line));
    } catch (const json::exception& e) {
      raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.detail());
    }
    if (c.d != d) raise(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + ": wrong dimension");
    for (Point v : c.vals)
      if (v >= points) raise(ErrorCode::InvalidElement, "line " + std::to_string(line_no) + ": point out of range");
    out.insert(c.vals);
  }
  return out;
}

CubeSet orbit_closure(const FiniteSystem& sys, int d, const std::vector<TupleElement>& gens,
                      const std::vector<Configuration>& seeds, std::uint64_t budget, std::string provenance) {
  CubeSet out(d, sys.size(), budget, std::move(provenance));
  const std::size_t n = vertex_count(d);
  std::vector<Point> cur(n), next(n);
  std::size_t head = 0;
  try {
    for (const Configuration& s : seeds) out.insert(s.vals);
    for (; head < out.size(); ++head) {
      out.get(head, cur);
      for (const TupleElement& t : gens) {
        act_on(sys, t, cur, next);
        out.insert(next);
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    std::ostringstream os;
    os << out.provenance() << " at d=" << d << ": visited " << out.size() << " states, " << (out.size() - head)
       << " still on the frontier (budget " << budget << ")";
    raise(ErrorCode::BudgetExceeded, os.str());
  }
  return out;
}

CubeSet dynamical_cubes(const FiniteSystem& sys, int d, std::uint64_t budget, bool cross_check) {
  if (d < 0 || d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "cube dimension out of range");
  const auto gens = hk_tuples(sys.group(), d);
  std::vector<Configuration> all_constants;
  for (Point x = 0; x < sys.size(); ++x) all_constants.push_back(Configuration::constant(d, x));
  if (!is_minimal(sys)) return orbit_closure(sys, d, gens, all_constants, budget, "C^[d] union of orbits");
  CubeSet single = orbit_closure(sys, d, gens, {Configuration::constant(d, 0)}, budget, "C^[d] orbit of 0^[d]");
  if (cross_check) {
    const CubeSet uni = orbit_closure(sys, d, gens, all_constants, budget, "C^[d] union of orbits");
    bool same = uni.size() == single.size();
    std::vector<Point> buf(vertex_count(d));
    for (std::size_t i = 0; same && i < uni.size(); ++i) {
      uni.get(i, buf);
      same = single.contains(std::span<const Point>(buf));
    }
    if (!same) raise(ErrorCode::InternalInvariantViolation, "single-orbit and union cube sets differ");
  }
  return single;
}

CubeSet cubes_at(const FiniteSystem& sys, const CubeSet& cubes, Point x) {
  if (x >= sys.size()) raise(ErrorCode::InvalidIndex, "base point out of range");
  CubeSet out(cubes.dim(), sys.size(), cubes.size() + 1, "C_x^[d] filtered");
  std::vector<Point> buf(vertex_count(cubes.dim()));
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    cubes.get(i, buf);
    if (buf[0] == x) out.insert(buf);
  }
  return out;
}

CubeSet y_space(const FiniteSystem& sys, int d, Point x, std::uint64_t budget) {
  if (x >= sys.size()) raise(ErrorCode::InvalidIndex, "base point out of range");
  if (d < 0 || d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "cube dimension out of range");
  return orbit_closure(sys, d, face_tuples(sys.group(), d), {Configuration::constant(d, x)}, budget,
                       "F^[d] orbit of x^[d] (x=" + std::to_string(x) + ")");
}

CubeSpace::CubeSpace(SystemPtr sys, std::uint64_t budget) : sys_(std::move(sys)), budget_(budget) {}

CubeSetPtr CubeSpace::cubes(int d) {
  {
    std::lock_guard lock(mu_);
    if (auto it = cubes_.find(d); it != cubes_.end()) return it->second;
  }
  auto built = std::make_shared<const CubeSet>(dynamical_cubes(*sys_, d, budget_));
  std::lock_guard lock(mu_);
  return cubes_.emplace(d, std::move(built)).first->second;
}

CubeSetPtr CubeSpace::slice(int d, Point x) {
  {
    std::lock_guard lock(mu_);
    if (auto it = slices_.find({d, x}); it != slices_.end()) return it->second;
  }
  auto built = std::make_shared<const CubeSet>(y_space(*sys_, d, x, budget_));
  std::lock_guard lock(mu_);
  if (slice_bytes_ + built->memory_bytes() > kSliceCacheBytes) return built;
  slice_bytes_ += built->memory_bytes();
  return slices_.emplace(std::make_pair(d, x), std::move(built)).first->second;
}

CheckReport check_cube_invariance(CubeSpace& space, int d, int r_max, const SampleOptions& opts) {
  CheckReport rep;
  rep.check = "cube_invariance";
  const auto cubes = space.cubes(d);
  std::mt19937_64 rng(opts.seed);
  for (int r = 0; r <= r_max; ++r) {
    const auto target = space.cubes(r);
    const auto morphisms = CubeMorphism::all(r, d);
    const std::uint64_t work = std::uint64_t{morphisms.size()} * cubes->size();
    const bool exhaustive = use_exhaustive(opts, work);
    std::vector<Point> c(vertex_count(d));
    auto test = [&](std::size_t ci, const CubeMorphism& f) {
      cubes->get(ci, c);
      const auto img = pull_back(c, f);
      ++rep.cases;
      if (!target->contains(std::span<const Point>(img))) {
        rep.fail({{"cube", c}, {"morphism", morphism_to_json(f)}, {"image", img}});
      }
    };
    if (exhaustive) {
      for (const CubeMorphism& f : morphisms)
        for (std::size_t i = 0; i < cubes->size(); ++i) test(i, f);
    } else {
      rep.exhaustive = false;
      std::uniform_int_distribution<std::size_t> pick_c(0, cubes->size() - 1), pick_f(0, morphisms.size() - 1);
      for (std::uint64_t s = 0; s < opts.samples; ++s) test(pick_c(rng), morphisms[pick_f(rng)]);
    }
    rep.states_visited += target->size();
  }
  rep.states_visited += cubes->size();
  rep.details["d"] = d;
  rep.details["r_max"] = r_max;
  return rep;
}

CheckReport check_ergodicity(CubeSpace& space) {
  CheckReport rep;
  rep.check = "ergodicity";
  const auto c1 = space.cubes(1);
  const std::size_t n = space.system().size();
  rep.cases = n * n;
  rep.states_visited = c1->size();
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) {
      const Point pair[2] = {x, y};
      if (!c1->contains(std::span<const Point>(pair, 2))) rep.fail({{"missing", {x, y}}});
    }
  return rep;
}

CheckReport check_completion(CubeSpace& space, int d, const SampleOptions& opts) {
  if (d < 1) raise(ErrorCode::InvalidDimension, "completion needs d >= 1");
  CheckReport rep;
  rep.check = "completion";
  rep.details["d"] = d;
  const std::size_t n = space.system().size();
  const auto faces = space.cubes(d - 1);
  const auto cubes = space.cubes(d);
  const std::uint32_t verts = vertex_count(d);
  const std::uint32_t face_verts = vertex_count(d - 1);
  rep.states_visited = faces->size() + cubes->size();

  // Non-top projections of the cubes.
  PackedStore extendable(verts - 1, std::max<std::size_t>(n, 1), cubes->size() + 1);
  std::vector<Point> buf(verts);
  for (std::size_t i = 0; i < cubes->size(); ++i) {
    cubes->get(i, buf);
    extendable.insert(std::span<const Point>(buf.data(), verts - 1));
  }

  const bool exhaustive = use_exhaustive(opts, power_saturating(n, verts - 1));
  if (!exhaustive) {
    rep.exhaustive = false;
    rep.details["mode"] = "punctured cubes";
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, cubes->size() - 1);
    std::vector<Point> face(face_verts);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
      cubes->get(pick(rng), buf);
      ++rep.cases;
      for (int j = 1; j <= d; ++j) {
        Configuration c{d, buf};
        const auto r = restrict_to_face(c, Face::hyperface(d, j, 0));
        if (!faces->contains(r)) rep.fail({{"cube", buf}, {"lower_face", j}});
      }
      if (!extendable.contains(std::span<const Point>(buf.data(), verts - 1))) rep.fail({{"corner", buf}});
    }
    return rep;
  }

  // Prefix sets of (d-1)-cubes for pruning: prefixes[k] holds the first k
  // values of each face cube.
  std::vector<PackedStore> prefixes;
  prefixes.reserve(face_verts + 1);
  for (std::uint32_t k = 0; k <= face_verts; ++k)
    prefixes.emplace_back(std::max<std::uint32_t>(k, 1), std::max<std::size_t>(n, 1), faces->size() + 1);
  std::vector<Point> fb(face_verts);
  for (std::size_t i = 0; i < faces->size(); ++i) {
    faces->get(i, fb);
    for (std::uint32_t k = 1; k <= face_verts; ++k) prefixes[k].insert(std::span<const Point>(fb.data(), k));
  }

  std::vector<Point> a(verts - 1);
  std::vector<std::vector<Vertex>> face_members(d + 1);
  for (int j = 1; j <= d; ++j) face_members[j] = face_vertices(Face::hyperface(d, j, 0));
  std::vector<Point> prefix(face_verts);
  std::uint64_t corners = 0;

  auto consistent = [&](Vertex v) {
    for (int j = 1; j <= d; ++j) {
      if (v & (1u << (j - 1))) continue;
      const std::uint32_t idx = index_in_lower_face(v, j);
      for (std::uint32_t k = 0; k <= idx; ++k) prefix[k] = a[face_members[j][k]];
      if (!prefixes[idx + 1].contains(std::span<const Point>(prefix.data(), idx + 1))) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, Vertex v) -> void {
    if (v == verts - 1) {
      ++corners;
      if (!extendable.contains(std::span<const Point>(a))) rep.fail({{"corner", a}});
      return;
    }
    for (Point x = 0; x < n; ++x) {
      a[v] = x;
      if (consistent(v)) self(self, v + 1);
    }
  };
  recurse(recurse, 0);
  rep.cases = corners;
  rep.details["corners"] = corners;
  return rep;
}

CheckReport check_fibrant(CubeSpace& space, int d_max, const SampleOptions& opts) {
  CheckReport rep;
  rep.check = "fibrant";
  json per = json::array();
  for (int d = 1; d <= d_max; ++d) {
    const auto r = check_completion(space, d, opts);
    per.push_back(r.to_json());
    rep.absorb(r);
  }
  rep.details["levels"] = per;
  rep.details["d_max"] = d_max;
  return rep;
}

CheckReport uniqueness_report(const CubeSet& cubes) {
  CheckReport rep;
  rep.check = "uniqueness";
  const int d = cubes.dim();
  rep.details["d"] = d;
  rep.states_visited = cubes.size();
  rep.cases = cubes.size();
  if (d == 0) {
    // Two 0-cubes always agree off the (only, top) vertex.
    if (cubes.size() > 1) rep.fail({{"first", cubes.at(0).vals}, {"second", cubes.at(1).vals}});
    return rep;
  }
  const std::uint32_t verts = vertex_count(d);
  PackedStore seen(verts - 1, 65536, cubes.size() + 1);
  std::vector<std::uint32_t> origin;
  std::vector<Point> buf(verts);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    cubes.get(i, buf);
    const auto [idx, inserted] = seen.insert(std::span<const Point>(buf.data(), verts - 1));
    if (inserted) {
      origin.push_back(static_cast<std::uint32_t>(i));
    } else {
      rep.fail({{"first", cubes.at(origin[idx]).vals}, {"second", buf}});
    }
  }
  return rep;
}

bool check_uniqueness(const CubeSet& cubes) { return uniqueness_report(cubes).pass; }

CheckReport check_glueing(const CubeSet& cubes) {
  CheckReport rep;
  rep.check = "glueing";
  const int d = cubes.dim();
  rep.details["d"] = d;
  if (d < 1) raise(ErrorCode::InvalidDimension, "glueing needs d >= 1");
  const std::uint32_t half = vertex_count(d - 1);
  PackedStore floors(half, 65536, cubes.size() + 1);
  std::vector<std::vector<std::uint32_t>> bucket;
  std::vector<Point> buf(2 * half), other(2 * half), glued(2 * half);
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    cubes.get(i, buf);
    const auto [idx, inserted] = floors.insert(std::span<const Point>(buf.data(), half));
    if (inserted) bucket.emplace_back();
    bucket[idx].push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    cubes.get(i, buf);
    const auto idx = floors.find(std::span<const Point>(buf.data() + half, half));
    if (idx < 0) continue;
    std::copy(buf.begin(), buf.begin() + half, glued.begin());
    for (std::uint32_t j : bucket[idx]) {
      cubes.get(j, other);
      std::copy(other.begin() + half, other.end(), glued.begin() + half);
      ++rep.cases;
      if (!cubes.contains(std::span<const Point>(glued))) rep.fail({{"c", buf}, {"c_prime", other}, {"glued", glued}});
    }
  }
  rep.states_visited = cubes.size();
  return rep;
}

CheckReport check_projections(CubeSpace& space, int d) {
  if (d < 1) raise(ErrorCode::InvalidDimension, "projections need d >= 1");
  CheckReport rep;
  rep.check = "projections";
  rep.details["d"] = d;
  const auto cubes = space.cubes(d);
  const auto lower = space.cubes(d - 1);
  const std::uint32_t half = vertex_count(d - 1);
  const std::size_t n = space.system().size();
  PackedStore floors(half, std::max<std::size_t>(n, 1), lower->size() + 1);
  PackedStore ceilings(half, std::max<std::size_t>(n, 1), lower->size() + 1);
  std::vector<Point> buf(2 * half);
  for (std::size_t i = 0; i < cubes->size(); ++i) {
    cubes->get(i, buf);
    std::span<const Point> f(buf.data(), half), c(buf.data() + half, half);
    ++rep.cases;
    if (!lower->contains(f) || !lower->contains(c)) {
      rep.fail({{"cube", buf}});
      continue;
    }
    floors.insert(f);
    ceilings.insert(c);
  }
  if (floors.size() != lower->size()) rep.fail({{"floor_image_size", floors.size()}, {"expected", lower->size()}});
  if (ceilings.size() != lower->size())
    rep.fail({{"ceiling_image_size", ceilings.size()}, {"expected", lower->size()}});
  rep.states_visited = cubes->size() + lower->size();
  return rep;
}

CheckReport check_closure(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "closure";
  rep.details["d"] = d;
  const auto& sys = space.system();
  const auto cubes = space.cubes(d);
  for (Point x = 0; x < sys.size(); ++x)
    if (!cubes->contains(Configuration::constant(d, x))) rep.fail({{"missing_constant", x}});
  const auto gens = hk_tuples(sys.group(), d);
  std::vector<Point> cur(vertex_count(d)), next(vertex_count(d));
  for (std::size_t i = 0; i < cubes->size(); ++i) {
    cubes->get(i, cur);
    for (const TupleElement& t : gens) {
      act_on(sys, t, cur, next);
      ++rep.cases;
      if (!cubes->contains(std::span<const Point>(next))) rep.fail({{"cube", cur}, {"image", next}});
    }
  }
  rep.states_visited = cubes->size();
  return rep;
}

CheckReport check_slices(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "slices";
  rep.details["d"] = d;
  const auto& sys = space.system();
  const auto cubes = space.cubes(d);
  std::vector<Point> buf(vertex_count(d));
  for (Point x = 0; x < sys.size(); ++x) {
    const CubeSet cx = cubes_at(sys, *cubes, x);
    const auto yx = space.slice(d, x);
    ++rep.cases;
    rep.states_visited += yx->size();
    bool inside = true;
    for (std::size_t i = 0; i < yx->size() && inside; ++i) {
      yx->get(i, buf);
      inside = cx.contains(std::span<const Point>(buf));
    }
    if (!inside || cx.size() != yx->size()) {
      rep.fail({{"x", x}, {"C_x", cx.size()}, {"Y_x", yx->size()}, {"Y_inside_C", inside}});
    }
  }
  return rep;
}

CheckReport check_hk_minimality(CubeSpace& space, int d) {
  CheckReport rep;
  rep.check = "hk_minimality";
  rep.details["d"] = d;
  const auto& sys = space.system();
  const auto cubes = space.cubes(d);
  const Configuration start = cubes->at(cubes->size() - 1);
  const CubeSet orbit = orbit_closure(sys, d, hk_tuples(sys.group(), d), {start}, space.budget(), "HK^[d] orbit");
  rep.cases = 1;
  rep.states_visited = orbit.size();
  if (orbit.size() != cubes->size()) rep.fail({{"start", start.vals}, {"orbit", orbit.size()}, {"cubes", cubes->size()}});
  return rep;
}

namespace {

std::vector<Vertex> validate_vertex_set(int d, std::vector<Vertex> v) {
  if (d < 0 || d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "cube dimension out of range");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) raise(ErrorCode::InvalidVertexSet, "vertex set is empty");
  for (Vertex w : v) {
    if (w >= vertex_count(d)) raise(ErrorCode::InvalidVertexSet, "vertex " + std::to_string(w) + " out of range");
    for (Vertex s = w;; s = (s - 1) & w) {
      if (!std::binary_search(v.begin(), v.end(), s)) {
        raise(ErrorCode::InvalidVertexSet,
              "vertex set is not downward closed: " + std::to_string(s) + " below " + std::to_string(w));
      }
      if (s == 0) break;
    }
  }
  return v;
}

}  // namespace

std::vector<std::vector<Point>> hom_space(CubeSpace& space, int d, const std::vector<Vertex>& vset) {
  const auto v = validate_vertex_set(d, vset);
  const std::size_t n = space.system().size();
  std::vector<CubeSetPtr> by_dim(d + 1);
  for (int k = 0; k <= d; ++k) by_dim[k] = space.cubes(k);
  // Position of each vertex in v, and the subcube below each vertex.
  std::vector<int> pos(vertex_count(d), -1);
  for (std::size_t i = 0; i < v.size(); ++i) pos[v[i]] = static_cast<int>(i);
  std::vector<std::vector<std::size_t>> below(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Face f{d, (vertex_count(d) - 1) & ~v[i], 0};
    for (Vertex u : face_vertices(f)) below[i].push_back(static_cast<std::size_t>(pos[u]));
  }
  std::vector<std::vector<Point>> out;
  std::vector<Point> a(v.size()), sub;
  auto recurse = [&](auto&& self, std::size_t i) -> void {
    if (i == v.size()) {
      if (out.size() >= space.budget()) raise(ErrorCode::BudgetExceeded, "Hom(V, X) exceeds budget");
      out.push_back(a);
      return;
    }
    const int k = std::popcount(v[i]);
    for (Point x = 0; x < n; ++x) {
      a[i] = x;
      sub.resize(below[i].size());
      for (std::size_t t = 0; t < below[i].size(); ++t) sub[t] = a[below[i][t]];
      if (by_dim[k]->contains(std::span<const Point>(sub))) self(self, i + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

CheckReport check_extension_property(CubeSpace& space, int d, const std::vector<Vertex>& vset) {
  const auto v = validate_vertex_set(d, vset);
  CheckReport rep;
  rep.check = "extension_property";
  rep.details["d"] = d;
  rep.details["V"] = v;
  const auto homs = hom_space(space, d, v);
  const auto cubes = space.cubes(d);
  PackedStore restricted(v.size(), std::max<std::size_t>(space.system().size(), 1), cubes->size() + 1);
  std::vector<Point> buf(vertex_count(d)), r(v.size());
  for (std::size_t i = 0; i < cubes->size(); ++i) {
    cubes->get(i, buf);
    for (std::size_t t = 0; t < v.size(); ++t) r[t] = buf[v[t]];
    restricted.insert(r);
  }
  for (const auto& alpha : homs) {
    ++rep.cases;
    if (!restricted.contains(alpha)) rep.fail({{"unextendable", alpha}});
  }
  if (restricted.size() != homs.size()) {
    // Restrictions of cubes are homomorphisms by cube invariance.
    rep.fail({{"restrictions", restricted.size()}, {"homs", homs.size()}});
  }
  rep.details["hom_size"] = homs.size();
  rep.states_visited = cubes->size();
  return rep;
}

}  // namespace hkcube
