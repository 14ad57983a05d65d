#include "hkcube/packed_store.hpp"

#include <cstring>

#include "hkcube/error.hpp"

namespace hkcube {

namespace {

constexpr std::size_t kInitialSlots = 1024;

inline std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

PackedStore::PackedStore(std::size_t width, std::size_t value_bound, std::uint64_t budget)
    : width_(width),
      bytes_(value_bound <= 256 ? 1 : 2),
      stride_(width * bytes_),
      budget_(budget),
      scratch_(stride_) {
  if (value_bound > 65536) raise(ErrorCode::TooLarge, "packed store supports values below 65536");
  if (budget_ > 0xFFFFFFFEULL) budget_ = 0xFFFFFFFEULL;
  slots_.assign(kInitialSlots, 0);
  slot_mask_ = kInitialSlots - 1;
}

void PackedStore::pack(std::span<const std::uint32_t> tuple, std::uint8_t* out) const {
  if (bytes_ == 1) {
    for (std::size_t i = 0; i < width_; ++i) out[i] = static_cast<std::uint8_t>(tuple[i]);
  } else {
    for (std::size_t i = 0; i < width_; ++i) {
      out[2 * i] = static_cast<std::uint8_t>(tuple[i]);
      out[2 * i + 1] = static_cast<std::uint8_t>(tuple[i] >> 8);
    }
  }
}

std::uint64_t PackedStore::hash_packed(const std::uint8_t* p) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ stride_;
  std::size_t i = 0;
  for (; i + 8 <= stride_; i += 8) {
    std::uint64_t w;
    std::memcpy(&w, p + i, 8);
    h = mix(h ^ w);
  }
  std::uint64_t tail = 0;
  for (std::size_t k = 0; i < stride_; ++i, ++k) tail |= std::uint64_t{p[i]} << (8 * k);
  return mix(h ^ tail);
}

std::int64_t PackedStore::lookup(const std::uint8_t* packed, std::uint64_t h) const {
  for (std::size_t s = h & slot_mask_;; s = (s + 1) & slot_mask_) {
    const std::uint32_t idx = slots_[s];
    if (idx == 0) return -static_cast<std::int64_t>(s) - 1;
    if (std::memcmp(arena_.data() + (idx - 1) * stride_, packed, stride_) == 0) return idx - 1;
  }
}

void PackedStore::grow() {
  const std::size_t n = slots_.size() * 2;
  slots_.assign(n, 0);
  slot_mask_ = n - 1;
  for (std::size_t idx = 0; idx < count_; ++idx) {
    std::size_t s = hash_packed(arena_.data() + idx * stride_) & slot_mask_;
    while (slots_[s] != 0) s = (s + 1) & slot_mask_;
    slots_[s] = static_cast<std::uint32_t>(idx + 1);
  }
}

std::pair<std::uint32_t, bool> PackedStore::insert(std::span<const std::uint32_t> tuple) {
  pack(tuple, scratch_.data());
  const std::uint64_t h = hash_packed(scratch_.data());
  const std::int64_t r = lookup(scratch_.data(), h);
  if (r >= 0) return {static_cast<std::uint32_t>(r), false};
  if (count_ >= budget_) {
    raise(ErrorCode::BudgetExceeded, "state budget of " + std::to_string(budget_) + " exhausted after " +
                                         std::to_string(count_) + " distinct states");
  }
  const std::size_t slot = static_cast<std::size_t>(-(r + 1));
  arena_.insert(arena_.end(), scratch_.begin(), scratch_.end());
  slots_[slot] = static_cast<std::uint32_t>(count_ + 1);
  const std::uint32_t idx = static_cast<std::uint32_t>(count_++);
  if (count_ * 2 > slots_.size()) grow();
  return {idx, true};
}

std::int64_t PackedStore::find(std::span<const std::uint32_t> tuple) const {
  // Per-thread buffer keeps concurrent lookups on a finished store safe.
  thread_local std::vector<std::uint8_t> buf;
  buf.resize(stride_);
  pack(tuple, buf.data());
  const std::int64_t r = lookup(buf.data(), hash_packed(buf.data()));
  return r >= 0 ? r : -1;
}

bool PackedStore::contains(std::span<const std::uint32_t> tuple) const { return find(tuple) >= 0; }

void PackedStore::get(std::uint32_t index, std::span<std::uint32_t> out) const {
  const std::uint8_t* p = arena_.data() + std::size_t{index} * stride_;
  if (bytes_ == 1) {
    for (std::size_t i = 0; i < width_; ++i) out[i] = p[i];
  } else {
    for (std::size_t i = 0; i < width_; ++i) out[i] = p[2 * i] | (std::uint32_t{p[2 * i + 1]} << 8);
  }
}

std::vector<std::uint32_t> PackedStore::at(std::uint32_t index) const {
  std::vector<std::uint32_t> out(width_);
  get(index, out);
  return out;
}

std::size_t PackedStore::memory_bytes() const noexcept {
  return arena_.capacity() + slots_.capacity() * sizeof(std::uint32_t);
}

}  // namespace hkcube
