#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "occbloom/hashing.hpp"

namespace occbloom {

/// Classic filters mark k distinct bits per item; standard filters mark k
/// independently drawn bits, so collisions within one item are possible.
enum class FilterVariant : std::uint8_t { Classic = 0, Standard = 1 };

const char* to_string(FilterVariant v);
/// Accepts "classic" or "standard"; throws DomainError otherwise.
FilterVariant parse_variant(std::string_view text);

struct FilterParams {
  std::uint64_t m = 0;  // bits
  std::uint32_t k = 0;  // hash bits per item
  FilterVariant variant = FilterVariant::Standard;
  Seed seed{};

  /// Throws DomainError unless 1 <= k <= m.
  void validate() const;

  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 44;

/// A live Bloom filter. Queries may run concurrently; insertion requires
/// exclusive access.
class BloomFilter {
 public:
  /// Throws DomainError for invalid parameters.
  explicit BloomFilter(FilterParams params);

  const FilterParams& params() const { return params_; }
  std::uint64_t size() const { return params_.m; }

  void insert(std::string_view element);
  bool query(std::string_view element) const;

  bool test(std::uint64_t bit) const;
  std::uint64_t bit_sum() const;

  /// Items inserted, or nullopt for intersections, whose count is unknown.
  std::optional<std::uint64_t> count() const { return count_; }

  /// Positions `element` maps to under this filter's hashing.
  std::vector<std::uint64_t> positions(std::string_view element) const;

  /// Format: "OBF1" | version u16 | variant u8 | hash scheme u8 | m u64 |
  /// k u32 | count u64 | seed[16] | ceil(m/8) bytes, bit i at byte i/8,
  /// position i%8 (LSB first). All integers little-endian; an unknown count
  /// is written as 2^64 - 1.
  std::vector<std::uint8_t> serialize() const;
  /// Throws FormatError carrying the offending byte offset.
  static BloomFilter deserialize(std::span<const std::uint8_t> bytes);

  friend BloomFilter filter_union(const BloomFilter& a, const BloomFilter& b);
  friend BloomFilter filter_intersect(const BloomFilter& a, const BloomFilter& b);
  friend bool operator==(const BloomFilter&, const BloomFilter&) = default;

 private:
  FilterParams params_;
  std::vector<std::uint64_t> words_;
  std::optional<std::uint64_t> count_ = 0;
};

/// Bitwise OR; count is the sum of the input counts (unknown if either is).
/// Throws IncompatibleFilters on parameter mismatch.
BloomFilter filter_union(const BloomFilter& a, const BloomFilter& b);
/// Bitwise AND; the result's count is unknown.
BloomFilter filter_intersect(const BloomFilter& a, const BloomFilter& b);

/// Estimated number of stored items from the bit sum. Classic filters invert
/// the committee mean with batch size k; standard filters invert the classic
/// mean (n k single balls) and divide by k. Throws SaturationError when every
/// bit is set.
double estimate_cardinality(const BloomFilter& filter);

}  // namespace occbloom
