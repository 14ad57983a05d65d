#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkcube/cubespace.hpp"
#include "hkcube/report.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

struct NrpResult {
  Relation relation;
  bool minimal = true;
  std::string warning;  // set for non-minimal input
  std::uint64_t states_visited = 0;
};

/// {(x, y) : corner(x, y, d+1, kind) in C^{[d+1]}}, one slice C_x^{[d+1]}
/// per base point. Pairs are recorded as found, so the result is symmetric
/// only if the relation is. Budget errors name the failing base point.
NrpResult corner_relation(CubeSpace& space, int d, CornerKind kind);
/// NRP^{[d]} via lower corners.
NrpResult nrp_relation(CubeSpace& space, int d);

/// Reflexive, symmetric, transitive (the relation equals the one induced
/// by its own classes) and invariant under every generator.
CheckReport verify_equivalence(const Relation& r, const FiniteSystem& sys);
/// Upper-corner relation equals the lower-corner relation.
CheckReport verify_alt_corner(CubeSpace& space, int d);

/// x ~_d y iff two cubes of C^{[d+1]} agree off the top vertex and end in
/// x and y.
Relation canonical_relation(CubeSpace& space, int d);
CheckReport check_canonical_matches_nrp(CubeSpace& space, int d);

/// Finite reading of RP^{[d]}: pairs (x, y) with f x'^{[d]} and f y'^{[d]}
/// ending in x and y with equal tails, for some f in F^{[d]}. Explores the
/// diagonal F^{[d]}-orbit of every pair (x'^{[d]}, y'^{[d]}).
Relation rp_relation(CubeSpace& space, int d, std::uint64_t* states_visited = nullptr);
CheckReport check_rp_subset_nrp(CubeSpace& space, int d);

/// P subset Q subset Q_eq subset NRP^{[1]}, P subset NRP^{[d]},
/// NRP^{[d+1]} subset NRP^{[d]}, and (x, hx) in NRP^{[d]} for h in G_{d+1},
/// for d <= d_max.
CheckReport elementary_chain_check(CubeSpace& space, int d_max);

struct NrpQuotient {
  Relation nrp;
  QuotientSystem quotient;
  CheckReport report;  // equivalence + NRP^{[d]} of the quotient is trivial
};
NrpQuotient quotient_by_nrp(CubeSpace& space, int d);
/// For a factor map phi: X -> Y with NRP^{[d]}(Y) trivial, phi is constant
/// on NRP^{[d]}(X)-classes and induces an equivariant map X/NRP^{[d]} -> Y.
/// Throws TargetNotOrderD when NRP^{[d]}(Y) is not the diagonal.
CheckReport verify_maximality(CubeSpace& space, int d, const FactorMap& phi);

/// (pi x pi)(NRP^{[d]}(X)) == NRP^{[d]}(Y).
CheckReport verify_lifting(const FactorMap& pi, int d, std::uint64_t budget = kDefaultBudget);

struct OrderStep {
  int d = 0;
  bool trivial = false;
  /// "computed", or "lower central certificate" when some h in G_{d+1}
  /// moves a point: (x, hx) lies in NRP^{[d]}, so it is not trivial.
  std::string method;
};
struct OrderResult {
  std::optional<int> order;
  std::vector<OrderStep> steps;
};
/// Smallest d in [0, d_max] with NRP^{[d]} trivial. With `certificates`
/// a level whose lower central term acts non-trivially is decided without
/// building cube sets.
OrderResult compute_order(CubeSpace& space, int d_max, bool certificates = true);
std::optional<int> order_of_system(CubeSpace& space, int d_max);

struct NilpotentQuotient {
  int d = 0;
  bool lower_term_fixes_x = false;  // G_{d+1} subset Fix(G, X)
  Subgroup fix;
  Subgroup lower_term;  // G_{d+1}
  Quotient h;           // G / G_{d+1}
  SystemPtr system;     // (H, X)
  std::optional<std::size_t> nilpotency_class;
};
/// Requires NRP^{[d]} trivial.
NilpotentQuotient effective_nilpotent_quotient(CubeSpace& space, int d);

struct TowerLevel {
  int k = 0;
  SystemPtr system;                  // X / NRP^{[k]}
  std::vector<Point> from_x;         // X -> this level
  std::vector<Point> to_next;        // this level -> X / NRP^{[k-1]}
  std::optional<FiniteGroup> k_group;  // structure group K_k
  std::vector<Perm> k_action;        // K_k element -> permutation of this level
  bool well_defined = false;
  bool free = false;
  bool orbits_are_fibres = false;
  bool abelian = false;
  bool commutes_with_g = false;
};

struct Tower {
  std::optional<int> order;
  std::vector<TowerLevel> levels;  // k = order, ..., 1
  bool projections_compose = false;
  bool final_abelian_group_system = false;
  CheckReport report;
};
/// X -> X/NRP^{[s-1]} -> ... -> X/NRP^{[1]} -> point with the structure
/// group of every level; s is the order (at most d_max). Any structural
/// failure raises InternalInvariantViolation.
Tower factor_tower(CubeSpace& space, int d_max);
nlohmann::json tower_to_json(const Tower& t);

/// Requires the diagonal action on X^{2^{d_max}} to be transitive; throws
/// NotApplicable otherwise. Checks Y_x = {x} x X^{2^d - 1}, C_x = Y_x and
/// NRP^{[d]} = X x X for d <= d_max.
CheckReport weakly_mixing_checks(CubeSpace& space, int d_max);

nlohmann::json relation_to_json(const Relation& r, const FiniteSystem& sys);
Relation relation_from_json(const nlohmann::json& j);
/// One "x\ty" line per ordered pair, sorted.
std::string relation_to_tsv(const Relation& r);

}  // namespace hkcube
