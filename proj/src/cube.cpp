#include "hkcube/cube.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <tuple>

#include "hkcube/error.hpp"

namespace hkcube {

namespace {

void check_dim(int d, int min = 1) {
  if (d < min || d > kMaxCubeDim) {
    raise(ErrorCode::InvalidDimension, "dimension " + std::to_string(d) + " outside [" +
                                           std::to_string(min) + ", " + std::to_string(kMaxCubeDim) + "]");
  }
}

std::vector<std::pair<int, int>> constraints(const Face& f) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < f.d; ++i)
    if (f.mask >> i & 1u) out.emplace_back(i + 1, static_cast<int>(f.values >> i & 1u));
  return out;
}

bool face_less(const Face& a, const Face& b) {
  if (a.codim() != b.codim()) return a.codim() < b.codim();
  return constraints(a) < constraints(b);
}

bool passes(const Face& f, FaceFilter filter) {
  switch (filter) {
    case FaceFilter::All: return true;
    case FaceFilter::Upper: return f.is_upper();
    case FaceFilter::Lower: return f.is_lower();
    case FaceFilter::Hyperface: return f.is_hyperface();
    case FaceFilter::UpperHyperface: return f.is_upper() && f.is_hyperface();
    case FaceFilter::PureCeiling: return f.is_pure_ceiling();
    case FaceFilter::Mixed: return f.is_mixed();
  }
  return false;
}

}  // namespace

int Face::codim() const { return std::popcount(mask); }

bool Face::is_pure_ceiling() const {
  return is_upper() && d >= 1 && (mask >> (d - 1) & 1u);
}

bool Face::intersects(const Face& other) const {
  const std::uint32_t both = mask & other.mask;
  return (values & both) == (other.values & both);
}

Face Face::intersect(const Face& other) const {
  if (d != other.d) raise(ErrorCode::DimensionMismatch, "faces of different dimension");
  if (!intersects(other)) raise(ErrorCode::InvalidParameter, "faces are disjoint");
  return Face{d, mask | other.mask, values | other.values};
}

bool Face::subset_of(const Face& other) const {
  // Every constraint of `other` must be implied by ours.
  return (other.mask & ~mask) == 0 && (values & other.mask) == other.values;
}

std::string Face::to_string() const {
  if (mask == 0) return "{0,1}^" + std::to_string(d);
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [pos, val] : constraints(*this)) {
    if (!first) os << ',';
    os << 'w' << pos << '=' << val;
    first = false;
  }
  os << '}';
  return os.str();
}

Face Face::full(int d) { return Face{d, 0, 0}; }

Face Face::upper(int d, std::uint32_t fixed_mask) {
  return Face{d, fixed_mask, fixed_mask};
}

Face Face::hyperface(int d, int position, int value) {
  if (position < 1 || position > d) raise(ErrorCode::InvalidIndex, "hyperface position out of range");
  const std::uint32_t bit = std::uint32_t{1} << (position - 1);
  return Face{d, bit, value ? bit : 0u};
}

std::vector<Face> enumerate_faces(int d, FaceFilter filter) {
  check_dim(d);
  std::vector<Face> out;
  const std::uint32_t n = vertex_count(d);
  for (std::uint32_t mask = 0; mask < n; ++mask) {
    // Enumerate value patterns as subsets of mask.
    std::uint32_t values = mask;
    while (true) {
      Face f{d, mask, values};
      if (passes(f, filter)) out.push_back(f);
      if (values == 0) break;
      values = (values - 1) & mask;
    }
  }
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

bool face_contains(const Face& f, int d, Vertex v) {
  if (f.d != d) raise(ErrorCode::DimensionMismatch, "face and vertex dimensions differ");
  if (v >= vertex_count(d)) raise(ErrorCode::InvalidIndex, "vertex out of range");
  return f.contains(v);
}

std::vector<Face> order_upper_faces(int d) {
  auto faces = enumerate_faces(d, FaceFilter::Upper);
  std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    return std::make_tuple(a.is_mixed(), -a.codim(), constraints(a)) <
           std::make_tuple(b.is_mixed(), -b.codim(), constraints(b));
  });
  return faces;
}

Configuration Configuration::constant(int d, Point x) {
  return Configuration{d, std::vector<Point>(vertex_count(d), x)};
}

Vertex CubeMorphism::apply(Vertex v) const {
  Vertex out = 0;
  for (int j = 0; j < d; ++j) {
    const Coord& c = coords[j];
    std::uint32_t bit = 0;
    switch (c.kind) {
      case CoordKind::Const0: bit = 0; break;
      case CoordKind::Const1: bit = 1; break;
      case CoordKind::Proj: bit = v >> (c.index - 1) & 1u; break;
      case CoordKind::NegProj: bit = ~(v >> (c.index - 1)) & 1u; break;
    }
    out |= bit << j;
  }
  return out;
}

void CubeMorphism::validate() const {
  if (r < 0 || d < 0 || r > kMaxCubeDim || d > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "morphism dimension out of range");
  if (static_cast<int>(coords.size()) != d) raise(ErrorCode::DimensionMismatch, "morphism needs one coordinate per target dimension");
  for (const Coord& c : coords) {
    if ((c.kind == CoordKind::Proj || c.kind == CoordKind::NegProj) && (c.index < 1 || c.index > r)) {
      raise(ErrorCode::InvalidIndex, "projection index outside source dimension");
    }
  }
}

std::vector<CubeMorphism> CubeMorphism::all(int r, int d) {
  std::vector<Coord> choices{{CoordKind::Const0, 0}, {CoordKind::Const1, 0}};
  for (int i = 1; i <= r; ++i) {
    choices.push_back({CoordKind::Proj, i});
    choices.push_back({CoordKind::NegProj, i});
  }
  std::vector<CubeMorphism> out;
  std::vector<std::size_t> digit(d, 0);
  while (true) {
    CubeMorphism m{r, d, {}};
    for (int j = 0; j < d; ++j) m.coords.push_back(choices[digit[j]]);
    out.push_back(std::move(m));
    int j = 0;
    while (j < d && ++digit[j] == choices.size()) digit[j++] = 0;
    if (j == d) break;
  }
  return out;
}

CubeMorphism CubeMorphism::identity(int d) {
  CubeMorphism m{d, d, {}};
  for (int i = 1; i <= d; ++i) m.coords.push_back({CoordKind::Proj, i});
  return m;
}

CubeMorphism CubeMorphism::reflection(int d) {
  CubeMorphism m{d, d, {}};
  for (int i = 1; i <= d; ++i) m.coords.push_back({CoordKind::NegProj, i});
  return m;
}

CubeMorphism compose(const CubeMorphism& f, const CubeMorphism& g) {
  if (g.d != f.r) raise(ErrorCode::DimensionMismatch, "cannot compose morphisms with mismatched dimensions");
  CubeMorphism h{g.r, f.d, {}};
  for (const Coord& c : f.coords) {
    if (c.kind == CoordKind::Const0 || c.kind == CoordKind::Const1) {
      h.coords.push_back(c);
      continue;
    }
    Coord inner = g.coords[c.index - 1];
    if (c.kind == CoordKind::NegProj) {
      switch (inner.kind) {
        case CoordKind::Const0: inner.kind = CoordKind::Const1; break;
        case CoordKind::Const1: inner.kind = CoordKind::Const0; break;
        case CoordKind::Proj: inner.kind = CoordKind::NegProj; break;
        case CoordKind::NegProj: inner.kind = CoordKind::Proj; break;
      }
    }
    h.coords.push_back(inner);
  }
  return h;
}

Configuration apply_morphism(const Configuration& c, const CubeMorphism& f) {
  f.validate();
  if (c.d != f.d) raise(ErrorCode::DimensionMismatch, "configuration dimension differs from morphism target");
  return Configuration{f.r, pull_back(c.vals, f)};
}

CubeMorphism doubling_morphism(int i, int d) {
  if (d < 0 || d + 1 > kMaxCubeDim) raise(ErrorCode::InvalidDimension, "doubling dimension out of range");
  if (i < 1 || i > d + 1) raise(ErrorCode::InvalidIndex, "doubling index " + std::to_string(i) + " outside [1, d+1]");
  CubeMorphism m{d + 1, d, {}};
  for (int j = 1; j <= d; ++j) m.coords.push_back({CoordKind::Proj, j < i ? j : j + 1});
  return m;
}

Configuration double_along(const Configuration& c, int i) {
  return apply_morphism(c, doubling_morphism(i, c.d));
}

Configuration corner(Point x, Point y, int d, CornerKind kind) {
  check_dim(d);
  Configuration c = Configuration::constant(d, kind == CornerKind::Lower ? x : y);
  if (kind == CornerKind::Lower) {
    c.vals[top_vertex(d)] = y;
  } else {
    c.vals[0] = x;
  }
  return c;
}

std::pair<Configuration, Configuration> split_floor_ceiling(const Configuration& c) {
  check_dim(c.d);
  const std::uint32_t half = vertex_count(c.d - 1);
  Configuration floor{c.d - 1, {c.vals.begin(), c.vals.begin() + half}};
  Configuration ceiling{c.d - 1, {c.vals.begin() + half, c.vals.end()}};
  return {std::move(floor), std::move(ceiling)};
}

Configuration join_floor_ceiling(const Configuration& floor, const Configuration& ceiling) {
  if (floor.d != ceiling.d) raise(ErrorCode::DimensionMismatch, "floor and ceiling dimensions differ");
  Configuration c{floor.d + 1, floor.vals};
  c.vals.insert(c.vals.end(), ceiling.vals.begin(), ceiling.vals.end());
  return c;
}

std::vector<Vertex> face_vertices(const Face& f) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(f.d); ++v)
    if (f.contains(v)) out.push_back(v);
  return out;
}

Configuration restrict_to_face(const Configuration& c, const Face& f) {
  if (c.d != f.d) raise(ErrorCode::DimensionMismatch, "face and configuration dimensions differ");
  // Ascending vertex order of a face is exactly the little-endian order of
  // its free coordinates.
  Configuration out{f.d - f.codim(), {}};
  for (Vertex v : face_vertices(f)) out.vals.push_back(c.vals[v]);
  return out;
}

}  // namespace hkcube
