#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hkcube {

using Point = std::uint32_t;

// Vertices of {0,1}^d are integers in [0, 2^d); bit i holds coordinate
// omega_{i+1}. The last coordinate omega_d is therefore the top bit, and the
// ceiling {omega_d = 1} is the upper half of the index range.
using Vertex = std::uint32_t;

constexpr int kMaxCubeDim = 10;

inline std::uint32_t vertex_count(int d) { return std::uint32_t{1} << d; }
inline Vertex top_vertex(int d) { return vertex_count(d) - 1; }

/// Face of {0,1}^d: coordinates in `mask` are fixed to the bits of `values`.
struct Face {
  int d = 0;
  std::uint32_t mask = 0;
  std::uint32_t values = 0;

  int codim() const;
  bool contains(Vertex v) const { return (v & mask) == values; }
  bool is_upper() const { return values == mask; }
  bool is_lower() const { return values == 0; }
  bool is_hyperface() const { return codim() == 1; }
  bool is_pure_ceiling() const;
  bool is_mixed() const { return is_upper() && !is_pure_ceiling(); }
  /// Intersection, or nullopt-like empty flag when constraints conflict.
  bool intersects(const Face& other) const;
  Face intersect(const Face& other) const;
  bool subset_of(const Face& other) const;

  /// Human form such as "{w1=1,w3=0}" or "{0,1}^3".
  std::string to_string() const;

  static Face full(int d);
  static Face upper(int d, std::uint32_t fixed_mask);
  static Face hyperface(int d, int position, int value);  // position 1..d

  bool operator==(const Face&) const = default;
};

enum class FaceFilter { All, Upper, Lower, Hyperface, UpperHyperface, PureCeiling, Mixed };

/// Faces ordered by codimension, then lexicographically on their sorted
/// (position, value) constraint lists.
std::vector<Face> enumerate_faces(int d, FaceFilter filter);

bool face_contains(const Face& f, int d, Vertex v);

/// Upper faces ordered so that inclusion is respected and every pure
/// ceiling face precedes every mixed one; {1} comes first, {0,1}^d last.
std::vector<Face> order_upper_faces(int d);

struct Configuration {
  int d = 0;
  std::vector<Point> vals;

  Point operator[](Vertex v) const { return vals[v]; }
  bool operator==(const Configuration&) const = default;
  auto operator<=>(const Configuration&) const = default;

  static Configuration constant(int d, Point x);
};

enum class CoordKind : std::uint8_t { Const0, Const1, Proj, NegProj };

struct Coord {
  CoordKind kind = CoordKind::Const0;
  int index = 0;  // 1-based source coordinate for Proj/NegProj
  bool operator==(const Coord&) const = default;
};

/// Morphism of discrete cubes {0,1}^r -> {0,1}^d.
struct CubeMorphism {
  int r = 0;
  int d = 0;
  std::vector<Coord> coords;  // one per target coordinate

  Vertex apply(Vertex v) const;
  /// Every morphism {0,1}^r -> {0,1}^d, (2 + 2r)^d of them.
  static std::vector<CubeMorphism> all(int r, int d);
  static CubeMorphism identity(int d);
  /// Pointwise negation omega -> 1 - omega.
  static CubeMorphism reflection(int d);

  void validate() const;
};

/// (f o g)(v) = f(g(v)); requires g.d == f.r.
CubeMorphism compose(const CubeMorphism& f, const CubeMorphism& g);

/// result(v) = c(f(v)) for v in {0,1}^f.r.
Configuration apply_morphism(const Configuration& c, const CubeMorphism& f);

template <class T>
std::vector<T> pull_back(const std::vector<T>& values, const CubeMorphism& f) {
  std::vector<T> out(vertex_count(f.r));
  for (Vertex v = 0; v < out.size(); ++v) out[v] = values[f.apply(v)];
  return out;
}

/// Deletes coordinate i (1 <= i <= d+1): {0,1}^{d+1} -> {0,1}^d.
CubeMorphism doubling_morphism(int i, int d);
Configuration double_along(const Configuration& c, int i);

enum class CornerKind { Lower, Upper };
Configuration corner(Point x, Point y, int d, CornerKind kind);

std::pair<Configuration, Configuration> split_floor_ceiling(const Configuration& c);
Configuration join_floor_ceiling(const Configuration& floor, const Configuration& ceiling);

/// Vertex set of a face in ascending order and the re-indexing of a
/// configuration restricted to it (free coordinates kept in order).
std::vector<Vertex> face_vertices(const Face& f);
Configuration restrict_to_face(const Configuration& c, const Face& f);

}  // namespace hkcube
