#pragma once

#include <set>
#include <vector>

#include "hkcube/cubespace.hpp"
#include "hkcube/report.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

// Brute-force constructions that share no code path with the packed BFS:
// a std::set fixpoint over every element letter on every hyperface (both
// orientations), started from all constant configurations.

std::set<std::vector<Point>> naive_cubes(const FiniteSystem& sys, int d, std::uint64_t budget = kDefaultBudget);
/// Lower-corner membership in naive_cubes(sys, d + 1).
Relation naive_nrp(const FiniteSystem& sys, int d, std::uint64_t budget = kDefaultBudget);

/// naive_cubes against CubeSpace::cubes, both inclusions.
CheckReport oracle_cubes_check(CubeSpace& space, int d);
/// naive_nrp and canonical_relation against nrp_relation.
CheckReport oracle_nrp_check(CubeSpace& space, int d);

}  // namespace hkcube
