#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hkcube/cube.hpp"
#include "hkcube/cube_groups.hpp"
#include "hkcube/packed_store.hpp"
#include "hkcube/report.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

/// Deduplicated set of d-configurations over a system's points, kept in
/// discovery order.
class CubeSet {
 public:
  CubeSet(int d, std::size_t points, std::uint64_t budget, std::string provenance);

  int dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return store_.size(); }
  const std::string& provenance() const noexcept { return provenance_; }
  bool contains(const Configuration& c) const;
  bool contains(std::span<const Point> vals) const { return store_.contains(vals); }
  Configuration at(std::size_t i) const;
  void get(std::size_t i, std::span<Point> out) const { store_.get(static_cast<std::uint32_t>(i), out); }
  /// Returns true when newly inserted.
  bool insert(std::span<const Point> vals) { return store_.insert(vals).second; }
  std::vector<Configuration> sorted() const;
  /// One JSON array per line, in sorted order.
  std::string to_json_lines() const;
  std::size_t memory_bytes() const { return store_.memory_bytes(); }

 private:
  int d_;
  PackedStore store_;
  std::string provenance_;
};

using CubeSetPtr = std::shared_ptr<const CubeSet>;

/// Orbit closure of `seeds` under the vertexwise action of `gens`.
/// Budget errors report the visited count and the open frontier.
CubeSet orbit_closure(const FiniteSystem& sys, int d, const std::vector<TupleElement>& gens,
                      const std::vector<Configuration>& seeds, std::uint64_t budget, std::string provenance);

/// C_G^{[d]}(X). For a minimal system a single HK^{[d]}-orbit of 0^{[d]};
/// otherwise the union of the orbits of all constant configurations. With
/// `cross_check` the minimal case is also built as a union and compared.
CubeSet dynamical_cubes(const FiniteSystem& sys, int d, std::uint64_t budget = kDefaultBudget,
                        bool cross_check = false);
/// C_x^{[d]}: configurations of C^{[d]} with c(0) = x.
CubeSet cubes_at(const FiniteSystem& sys, const CubeSet& cubes, Point x);
/// Y_x^{[d]}: the F^{[d]}-orbit of x^{[d]}.
CubeSet y_space(const FiniteSystem& sys, int d, Point x, std::uint64_t budget = kDefaultBudget);

/// Lazily computed cube sets of one system, cached per dimension and base
/// point. Thread-safe.
class CubeSpace {
 public:
  explicit CubeSpace(SystemPtr sys, std::uint64_t budget = kDefaultBudget);

  const FiniteSystem& system() const { return *sys_; }
  const SystemPtr& system_ptr() const { return sys_; }
  std::uint64_t budget() const noexcept { return budget_; }
  CubeSetPtr cubes(int d);
  /// Y_x^{[d]}, which equals C_x^{[d]} for group actions: any cube over x is
  /// f t^{[d]} x^{[d]} with f(0) = Id, hence t x = x.
  /// Slices are kept only while the total cached footprint stays below
  /// kSliceCacheBytes.
  CubeSetPtr slice(int d, Point x);

  static constexpr std::size_t kSliceCacheBytes = std::size_t{256} << 20;

 private:
  SystemPtr sys_;
  std::uint64_t budget_;
  std::mutex mu_;
  std::size_t slice_bytes_ = 0;
  std::map<int, CubeSetPtr> cubes_;
  std::map<std::pair<int, Point>, CubeSetPtr> slices_;
};

struct SampleOptions {
  enum class Mode { Auto, Exhaustive, Sample };
  Mode mode = Mode::Auto;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

/// c o f in C^{[r]} for all morphisms f: {0,1}^r -> {0,1}^d, r <= r_max.
CheckReport check_cube_invariance(CubeSpace& space, int d, int r_max, const SampleOptions& opts = {});
/// C^{[1]} = X x X.
CheckReport check_ergodicity(CubeSpace& space);
/// Every d-corner extends to a cube. Exhaustive when |X|^{2^d - 1} <= 2^22,
/// otherwise punctured actual cubes are sampled and the report is marked
/// non-exhaustive.
CheckReport check_completion(CubeSpace& space, int d, const SampleOptions& opts = {});
CheckReport check_fibrant(CubeSpace& space, int d_max, const SampleOptions& opts = {});
/// No two cubes agree off the top vertex.
bool check_uniqueness(const CubeSet& cubes);
CheckReport uniqueness_report(const CubeSet& cubes);
/// (c1, c2), (c2, c3) in C implies (c1, c3) in C.
CheckReport check_glueing(const CubeSet& cubes);
/// pi_f(C^{[d]}) = pi_c(C^{[d]}) = C^{[d-1]}.
CheckReport check_projections(CubeSpace& space, int d);
/// Constant configurations present and C closed under every HK generator.
CheckReport check_closure(CubeSpace& space, int d);
/// C_x^{[d]} equals the F^{[d]}-orbit of x^{[d]} for every x.
CheckReport check_slices(CubeSpace& space, int d);
/// HK^{[d]} acts on C^{[d]} with a single orbit (minimal systems).
CheckReport check_hk_minimality(CubeSpace& space, int d);

/// Hom(V, X): maps V -> X whose restriction to each subcube below a vertex
/// of V is a cube. Returned as value lists in ascending vertex order.
std::vector<std::vector<Point>> hom_space(CubeSpace& space, int d, const std::vector<Vertex>& v);
CheckReport check_extension_property(CubeSpace& space, int d, const std::vector<Vertex>& v);

nlohmann::json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const nlohmann::json& j);
/// Inverse of CubeSet::to_json_lines; blank lines are skipped.
CubeSet cube_set_from_json_lines(const std::string& text, int d, std::size_t points,
                                 std::uint64_t budget = kDefaultBudget);

}  // namespace hkcube
