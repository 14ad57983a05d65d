#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

namespace hkcube {

/// Outcome of a verification routine, serialised as
/// {check, status, witnesses, exhaustive, states_visited, ...}.
struct CheckReport {
  std::string check;
  bool pass = true;
  bool exhaustive = true;
  std::uint64_t states_visited = 0;
  std::uint64_t cases = 0;
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json details = nlohmann::json::object();

  /// Marks the report failed and records up to `keep` witnesses.
  void fail(nlohmann::json witness, std::size_t keep = 8);
  /// Folds another report in: status and exhaustiveness combine by AND.
  void absorb(const CheckReport& other);
  nlohmann::json to_json() const;
};

}  // namespace hkcube
