#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hkcube {

using Elem = std::uint32_t;

/// A permutation of {0, ..., n-1} given by its image list.
using Perm = std::vector<std::uint32_t>;

/// Finite group stored as a full multiplication table.
///
/// Elements are the indices 0..order()-1. Construction validates the group
/// axioms (associativity exhaustively up to order 256, on random triples
/// above), so every live instance is a group. Instances are immutable and
/// each carries a process-unique id used as a cache key by tuple-group
/// closures.
class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 4096;

  /// Builds a group from a row-major order x order table. Generators may be
  /// empty, in which case a small generating set is chosen greedily.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> table,
                                std::vector<std::string> labels = {},
                                std::vector<Elem> generators = {});

  /// Closes the given permutations (all of the same degree) under
  /// composition. The generator list of the result is the input order with
  /// duplicates and the identity removed. Composition convention: (p*q)(i) =
  /// p(q(i)), so permutation products act right to left.
  static FiniteGroup from_permutations(const std::vector<Perm>& gens,
                                       std::size_t degree);

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a * order_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  bool valid(Elem a) const noexcept { return a < order_; }

  const std::vector<Elem>& generators() const noexcept { return generators_; }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Permutation realisation when the group was built from permutations.
  const std::optional<std::vector<Perm>>& permutations() const noexcept {
    return perms_;
  }
  std::optional<Elem> find_permutation(const Perm& p) const;

  std::uint64_t uid() const noexcept { return uid_; }
  bool is_abelian() const;

  /// Index of the element with the given label, if any.
  std::optional<Elem> find_label(const std::string& label) const;

 private:
  FiniteGroup() = default;
  void finish(std::vector<Elem> generators);

  std::size_t order_ = 0;
  Elem identity_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::vector<std::string> labels_;
  std::optional<std::vector<Perm>> perms_;
  std::uint64_t uid_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup as a sorted member list plus the generators it was built from.
struct Subgroup {
  std::vector<Elem> members;
  std::vector<Elem> generators;

  std::size_t size() const noexcept { return members.size(); }
  bool contains(Elem e) const;
  bool operator==(const Subgroup& other) const {
    return members == other.members;
  }
};

Subgroup generate_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);

/// g h g^-1 h^-1.
Elem commutator(const FiniteGroup& g, Elem a, Elem b);

/// [A, B]: the subgroup generated by all [a, b].
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a,
                             const Subgroup& b);

/// G_1 = G, G_{i+1} = [G, G_i], listed until the first repeat; the stable
/// term appears once.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);

/// G_i for any i >= 1, continuing with the stable term past the end of the
/// computed series.
Subgroup lower_central_term(const FiniteGroup& g, std::size_t i);

/// Nilpotency class, or nullopt when the series stabilizes above {Id}.
std::optional<std::size_t> nilpotency_class(const FiniteGroup& g);

bool is_perfect(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& n);

struct Quotient {
  FiniteGroup group;
  std::vector<Elem> map;  // parent element -> coset index
};

/// Coset group G/N. Cosets are numbered by increasing smallest member.
Quotient quotient_group(const FiniteGroup& g, const Subgroup& n);

/// G/[G, G] with its canonical surjection.
Quotient abelianization(const FiniteGroup& g);

/// Checks that `map` is a surjective homomorphism between the tables.
bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                     std::span<const Elem> map);

/// Disjoint-cycle notation with 1-based letters, "()" for the identity.
std::string cycle_string(const Perm& p);

}  // namespace hkcube
