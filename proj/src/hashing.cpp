#include "occbloom/hashing.hpp"

#include <algorithm>
#include <mutex>

#include <sodium.h>

namespace occbloom {

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) std::abort();
  });
}

std::uint64_t load_le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

Seed seed_from_u64(std::uint64_t value) {
  Seed seed{};
  for (int i = 0; i < 8; ++i) seed[i] = static_cast<std::uint8_t>(value >> (8 * i));
  return seed;
}

BlockStream::BlockStream(const Seed& seed, std::string_view element) {
  ensure_sodium();
  crypto_shorthash_siphashx24(digest_.data(),
                              reinterpret_cast<const unsigned char*>(element.data()),
                              element.size(), seed.data());
}

void BlockStream::refill() {
  std::array<std::uint8_t, 8> counter{};
  for (int i = 0; i < 8; ++i) counter[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  ++counter_;
  std::array<std::uint8_t, 16> out{};
  crypto_shorthash_siphashx24(out.data(), counter.data(), counter.size(), digest_.data());
  buffer_[0] = load_le64(out.data());
  buffer_[1] = load_le64(out.data() + 8);
  buffered_ = 2;
}

std::uint64_t BlockStream::next() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

PositionStream::PositionStream(const Seed& seed, std::string_view element, std::uint64_t m)
    : blocks_(seed, element), m_(m) {
  // 2^64 mod m, computed without 128-bit arithmetic.
  const std::uint64_t rem = (0 - m) % m;
  limit_ = rem == 0 ? 0 : 0 - rem;
}

std::uint64_t PositionStream::next() {
  for (;;) {
    std::uint64_t block = blocks_.next();
    if (limit_ == 0 || block < limit_) return block % m_;
  }
}

std::vector<std::uint64_t> derive_positions(const Seed& seed, std::string_view element,
                                            std::uint64_t m, std::uint32_t k, bool distinct) {
  PositionStream stream(seed, element, m);
  std::vector<std::uint64_t> out;
  out.reserve(k);
  if (!distinct) {
    for (std::uint32_t i = 0; i < k; ++i) out.push_back(stream.next());
    return out;
  }
  if (k <= 32) {
    while (out.size() < k) {
      std::uint64_t p = stream.next();
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
  }
  std::vector<bool> seen(m, false);
  while (out.size() < k) {
    std::uint64_t p = stream.next();
    if (!seen[p]) {
      seen[p] = true;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace occbloom
