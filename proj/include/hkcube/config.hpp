#pragma once

#include <string>

#include "hkcube/group.hpp"
#include "hkcube/system.hpp"

namespace hkcube {

/// Parses a system description. Grammar, one directive per line, '#'
/// starts a comment:
///
///   system <builtin>                  whole system from the catalog
///   group builtin <group>             e.g. cyclic:4, heisenberg:2
///   group perm <degree>               followed by a generators line
///   group table <order>               followed by <order> rows of indices
///   generators <g> <g> ...            cycles like (1 2)(3 4) for perm
///                                     groups, element indices for tables
///   labels <name> ...                 optional element labels for tables
///   action regular                    G on itself by left translation
///   action coset <h> <h> ...          G on G/H, H generated by the
///                                     listed elements
///   action perm <points>              followed by one line per group
///                                     generator giving its permutation
///   name <text>
///
/// Elements may be written as indices, as cycles for permutation groups,
/// or by label. Errors carry "line L, column C".
SystemPtr parse_config(const std::string& text);

/// A catalog name, or a path to a config file when one exists.
SystemPtr load_system(const std::string& name_or_path);

/// Cycle notation over 1..degree, e.g. "(1 2 3)(4 5)" or "()".
/// Column positions in errors are offset by `column`.
Perm parse_cycles(const std::string& text, std::size_t degree, std::size_t line = 0, std::size_t column = 1);

}  // namespace hkcube
