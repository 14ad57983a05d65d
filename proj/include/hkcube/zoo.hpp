#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hkcube/group.hpp"
#include "hkcube/report.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

// Groups.
GroupPtr cyclic_group(std::size_t n);
/// D_n as permutations of the n-gon vertices, generated by the rotation
/// (1 2 ... n) and the reflection fixing vertex 1. Requires n >= 3.
GroupPtr dihedral_group(std::size_t n);
/// Unitriangular 3x3 matrices over Z/p, element (a, b, c) at index
/// a + p b + p^2 c with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
/// Generated by (1,0,0) and (0,1,0); the center is the c-axis.
GroupPtr heisenberg_group(std::size_t p);
GroupPtr symmetric_group(std::size_t n);
GroupPtr alternating_group(std::size_t n);
GroupPtr a5_group();
GroupPtr direct_product(const std::vector<GroupPtr>& factors);

// Systems. Every builder asserts minimality.
SystemPtr rotation(std::size_t n);
SystemPtr regular(const GroupPtr& g, std::string name = {});
/// G acting on its left cosets gH, cosets ordered by smallest member.
SystemPtr coset(const GroupPtr& g, const Subgroup& h, std::string name = {});
SystemPtr heisenberg_mod(std::size_t p);
SystemPtr a5_regular();
/// D_n on the n vertices of the n-gon.
SystemPtr dihedral(std::size_t n);
/// A permutation group on the points it moves, {0..degree-1}.
SystemPtr natural(const GroupPtr& g, std::string name = {});
/// Product group acting coordinatewise on the product space.
SystemPtr product_of(const std::vector<SystemPtr>& systems);

/// Group named like "cyclic:4", "dihedral:5", "heisenberg:3", "a5",
/// "symmetric:3", "alternating:4", or "A*B" for a direct product.
GroupPtr builtin_group(const std::string& spec);
/// System named like "rotation:4", "heisenberg:2", "a5", "dihedral:4",
/// "regular:<group>", "natural:<group>", "coset:<group>/<i>,<j>,..." (the
/// subgroup generated by element indices), "product:<sys>*<sys>".
SystemPtr builtin_system(const std::string& spec);
/// Names used by the test and acceptance sweeps.
std::vector<std::string> zoo_catalog();

/// Cyclic-order preservation under rotation on Z/q, the exact fact behind
/// the failure of glueing for Sturmian-type systems: for 0 <= n <= n_max,
/// w in [0, half) and y in (q - half, q] (with q identified with 0), the
/// orientation of (w + n p, y + n p) equals that of (w, y).
CheckReport sturmian_orientation_demo(std::int64_t q, std::int64_t p, std::int64_t n_max, std::int64_t half);

}  // namespace hkcube
