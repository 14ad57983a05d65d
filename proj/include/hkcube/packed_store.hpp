#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hkcube {

/// Insertion-ordered hash set of fixed-width integer tuples.
///
/// Tuples are packed at one byte per entry when every value is below 256 and
/// two bytes otherwise. Indices are assigned in insertion order, so a BFS can
/// use the store itself as its queue. Inserting beyond `budget` distinct
/// tuples throws BudgetExceeded.
class PackedStore {
 public:
  PackedStore(std::size_t width, std::size_t value_bound, std::uint64_t budget);

  /// Returns (index, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const std::uint32_t> tuple);
  bool contains(std::span<const std::uint32_t> tuple) const;
  std::int64_t find(std::span<const std::uint32_t> tuple) const;

  void get(std::uint32_t index, std::span<std::uint32_t> out) const;
  std::vector<std::uint32_t> at(std::uint32_t index) const;

  std::size_t size() const noexcept { return count_; }
  std::size_t width() const noexcept { return width_; }
  std::uint64_t budget() const noexcept { return budget_; }
  std::size_t bytes_per_entry() const noexcept { return bytes_; }
  /// Approximate heap footprint.
  std::size_t memory_bytes() const noexcept;

 private:
  std::uint64_t hash_packed(const std::uint8_t* p) const;
  void pack(std::span<const std::uint32_t> tuple, std::uint8_t* out) const;
  std::int64_t lookup(const std::uint8_t* packed, std::uint64_t h) const;
  void grow();

  std::size_t width_;
  std::size_t bytes_;
  std::size_t stride_;
  std::uint64_t budget_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> arena_;
  std::vector<std::uint32_t> slots_;  // 0 = empty, else index + 1
  std::size_t slot_mask_ = 0;
  std::vector<std::uint8_t> scratch_;
};

}  // namespace hkcube
