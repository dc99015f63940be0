#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace occbloom {

using Seed = std::array<std::uint8_t, 16>;

/// Version tag of the index derivation below, recorded in filter files.
inline constexpr std::uint8_t kHashSchemeVersion = 1;

/// Seed whose first eight bytes hold `value` little-endian, rest zero.
Seed seed_from_u64(std::uint64_t value);

/// Uniform 64-bit block stream for one element.
///
/// The element is digested with SipHash-2-4 (128-bit output) keyed by the
/// filter seed; the digest then keys SipHash-2-4-128 over a little-endian
/// 64-bit counter, each call yielding two 64-bit blocks (low half first).
class BlockStream {
 public:
  BlockStream(const Seed& seed, std::string_view element);

  std::uint64_t next();

 private:
  void refill();

  std::array<std::uint8_t, 16> digest_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
};

/// Exactly uniform positions in [0, m) by rejection sampling over a block
/// stream: blocks at or above floor(2^64 / m) * m are discarded.
class PositionStream {
 public:
  PositionStream(const Seed& seed, std::string_view element, std::uint64_t m);

  std::uint64_t next();

 private:
  BlockStream blocks_;
  std::uint64_t m_;
  std::uint64_t limit_;  // 0 means every block is accepted
};

/// The first k positions (Standard) or first k distinct positions (Classic).
std::vector<std::uint64_t> derive_positions(const Seed& seed, std::string_view element,
                                            std::uint64_t m, std::uint32_t k, bool distinct);

}  // namespace occbloom
