#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkcube/cube.hpp"
#include "hkcube/group.hpp"

namespace hkcube {

/// Finite group action (G, X).
///
/// The action table is row-major by group element. Construction checks that
/// every generator acts as a permutation, the identity acts trivially, and
/// act(g s, x) == act(g, act(s, x)) for every element g, generator s and
/// point x; together these prove the whole table is a homomorphism into
/// Sym(X).
class FiniteSystem {
 public:
  FiniteSystem(GroupPtr group, std::size_t points, std::vector<Point> action,
               std::vector<std::string> labels = {}, std::string name = {});

  /// Builds the action from one permutation per group generator and checks
  /// that it extends to a homomorphism.
  static FiniteSystem from_generator_action(GroupPtr group, std::size_t points,
                                            const std::vector<Perm>& generator_perms,
                                            std::vector<std::string> labels = {},
                                            std::string name = {});

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t size() const noexcept { return points_; }
  Point act(Elem g, Point x) const { return action_[std::size_t{g} * points_ + x]; }
  const std::string& label(Point x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

 private:
  GroupPtr group_;
  std::size_t points_;
  std::vector<Point> action_;
  std::vector<std::string> labels_;
  std::string name_;
};

using SystemPtr = std::shared_ptr<const FiniteSystem>;

/// Symmetric relation on {0..n-1} as a dense bit matrix.
class Relation {
 public:
  explicit Relation(std::size_t n = 0);
  static Relation diagonal(std::size_t n);
  static Relation full(std::size_t n);
  /// Equivalence with the given class label per point.
  static Relation from_classes(const std::vector<std::size_t>& class_of);

  std::size_t points() const noexcept { return n_; }
  bool contains(Point x, Point y) const { return bits_[std::size_t{x} * n_ + y] != 0; }
  /// Inserts (x, y) and (y, x).
  void insert(Point x, Point y);
  /// Inserts (x, y) only; for recording a computed relation before its
  /// symmetry has been checked.
  void insert_directed(Point x, Point y) { bits_[std::size_t{x} * n_ + y] = 1; }
  std::size_t pair_count() const;  // ordered pairs
  std::vector<std::pair<Point, Point>> pairs() const;  // sorted, ordered pairs

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }
  bool is_diagonal() const;
  bool subset_of(const Relation& other) const;

  /// Connected components of the relation graph, each sorted, ordered by
  /// smallest member. Only a partition of the relation when it is an
  /// equivalence.
  std::vector<std::vector<Point>> classes() const;
  /// Class index per point for the components above.
  std::vector<std::size_t> class_index() const;

  bool operator==(const Relation& other) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> bits_;
};

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// Equivariant surjection between two systems with the same acting group.
struct FactorMap {
  SystemPtr source;
  SystemPtr target;
  std::vector<Point> map;

  /// Checks surjectivity and equivariance exhaustively; throws InvalidSystem.
  void validate() const;
};

std::vector<Point> orbit(const FiniteSystem& sys, Point x);
std::vector<std::vector<Point>> orbits(const FiniteSystem& sys);
bool is_minimal(const FiniteSystem& sys);

/// Diagonal action on X^n (points encoded little-endian base |X|).
FiniteSystem product_system(const FiniteSystem& sys, int n, std::uint64_t budget = std::uint64_t{1} << 20);
/// Orbit sizes of the diagonal action on X^n, computed without
/// materialising the action table.
std::vector<std::size_t> diagonal_orbit_sizes(const FiniteSystem& sys, int n,
                                              std::uint64_t budget = std::uint64_t{1} << 24);
bool is_transitive_of_all_orders(const FiniteSystem& sys, int n_max,
                                 std::uint64_t budget = std::uint64_t{1} << 24);

/// Finite readings of the limit notions: a converging net is eventually
/// constant, so each condition becomes an equality with a single witness g.
Relation proximal_relation(const FiniteSystem& sys);
Relation q_relation(const FiniteSystem& sys);
/// Smallest G-invariant equivalence containing Q.
Relation q_eq_relation(const FiniteSystem& sys);

bool is_invariant(const FiniteSystem& sys, const Relation& r);
/// Class count and G-invariance witness; throws when not invariant.
struct QuotientSystem {
  SystemPtr system;
  FactorMap projection;
};
/// Points of the quotient are the classes, ordered by smallest member.
QuotientSystem quotient_system(const SystemPtr& sys, const Relation& r);

/// Finite criterion for a minimal abelian group system: the image of G in
/// Sym(X) is abelian and acts freely. On success returns the group
/// structure on X with `base` as identity (x + y = g_x g_y base).
struct AbelianGroupStructure {
  bool is_abelian_group_system = false;
  std::optional<FiniteGroup> group;
};
AbelianGroupStructure check_abelian_group_system(const FiniteSystem& sys, Point base = 0);

/// Fix(G, X) as a subgroup.
Subgroup fixator(const FiniteSystem& sys);

}  // namespace hkcube
