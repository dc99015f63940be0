#include "occbloom/filter.hpp"

#include <bit>
#include <string>

#include "occbloom/errors.hpp"
#include "occbloom/estimators.hpp"

namespace occbloom {

namespace {

constexpr std::uint64_t kUnknownCount = ~std::uint64_t{0};
constexpr std::uint8_t kMagic[4] = {'O', 'B', 'F', '1'};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | in[offset + static_cast<std::size_t>(i)];
  return v;
}

void require_compatible(const BloomFilter& a, const BloomFilter& b) {
  if (!(a.params() == b.params())) {
    throw IncompatibleFilters("filters differ in m, k, variant, or seed");
  }
}

}  // namespace

const char* to_string(FilterVariant v) {
  return v == FilterVariant::Classic ? "classic" : "standard";
}

FilterVariant parse_variant(std::string_view text) {
  if (text == "classic") return FilterVariant::Classic;
  if (text == "standard") return FilterVariant::Standard;
  throw DomainError("unknown filter variant '" + std::string(text) + "'");
}

void FilterParams::validate() const {
  if (m == 0) throw DomainError("filter needs at least one bit");
  if (k == 0 || k > m) {
    throw DomainError("hash bits k=" + std::to_string(k) + " must lie in [1, m=" +
                      std::to_string(m) + "]");
  }
}

BloomFilter::BloomFilter(FilterParams params) : params_(params) {
  params_.validate();
  words_.assign((params_.m + 63) / 64, 0);
}

std::vector<std::uint64_t> BloomFilter::positions(std::string_view element) const {
  return derive_positions(params_.seed, element, params_.m, params_.k,
                          params_.variant == FilterVariant::Classic);
}

void BloomFilter::insert(std::string_view element) {
  for (std::uint64_t p : positions(element)) words_[p / 64] |= std::uint64_t{1} << (p % 64);
  if (count_) ++*count_;
}

bool BloomFilter::query(std::string_view element) const {
  // Walk the stream lazily so negatives usually stop at the first clear bit.
  PositionStream stream(params_.seed, element, params_.m);
  if (params_.variant == FilterVariant::Standard) {
    for (std::uint32_t i = 0; i < params_.k; ++i) {
      if (!test(stream.next())) return false;
    }
    return true;
  }
  for (std::uint64_t p : positions(element)) {
    if (!test(p)) return false;
  }
  return true;
}

bool BloomFilter::test(std::uint64_t bit) const {
  return (words_[bit / 64] >> (bit % 64)) & 1U;
}

std::uint64_t BloomFilter::bit_sum() const {
  std::uint64_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::vector<std::uint8_t> BloomFilter::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + (params_.m + 7) / 8);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_le(out, kFormatVersion, 2);
  out.push_back(static_cast<std::uint8_t>(params_.variant));
  out.push_back(kHashSchemeVersion);
  put_le(out, params_.m, 8);
  put_le(out, params_.k, 4);
  put_le(out, count_ ? *count_ : kUnknownCount, 8);
  out.insert(out.end(), params_.seed.begin(), params_.seed.end());
  const std::uint64_t nbytes = (params_.m + 7) / 8;
  for (std::uint64_t b = 0; b < nbytes; ++b) {
    out.push_back(static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8))));
  }
  return out;
}

BloomFilter BloomFilter::deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("truncated header", bytes.size());
  for (std::size_t i = 0; i < 4; ++i) {
    if (bytes[i] != kMagic[i]) throw FormatError("bad magic", i);
  }
  if (get_le(bytes, 4, 2) != kFormatVersion) throw FormatError("unsupported format version", 4);
  if (bytes[6] > 1) throw FormatError("unknown variant", 6);
  if (bytes[7] != kHashSchemeVersion) throw FormatError("unsupported hash scheme", 7);

  FilterParams params;
  params.variant = static_cast<FilterVariant>(bytes[6]);
  params.m = get_le(bytes, 8, 8);
  params.k = static_cast<std::uint32_t>(get_le(bytes, 16, 4));
  if (params.m == 0) throw FormatError("zero filter length", 8);
  if (params.k == 0 || params.k > params.m) throw FormatError("invalid hash bit count", 16);
  const std::uint64_t count = get_le(bytes, 20, 8);
  std::copy(bytes.begin() + 28, bytes.begin() + 44, params.seed.begin());

  const std::uint64_t nbytes = (params.m + 7) / 8;
  if (bytes.size() - kHeaderSize < nbytes) throw FormatError("truncated bit array", bytes.size());
  if (bytes.size() - kHeaderSize > nbytes) {
    throw FormatError("trailing bytes after bit array", kHeaderSize + nbytes);
  }
  if (params.m % 8 != 0) {
    const std::uint8_t last = bytes[kHeaderSize + nbytes - 1];
    if (last >> (params.m % 8)) {
      throw FormatError("padding bits set past m", kHeaderSize + nbytes - 1);
    }
  }

  BloomFilter filter(params);
  for (std::uint64_t b = 0; b < nbytes; ++b) {
    filter.words_[b / 8] |= static_cast<std::uint64_t>(bytes[kHeaderSize + b]) << (8 * (b % 8));
  }
  if (count == kUnknownCount) {
    filter.count_.reset();
  } else {
    filter.count_ = count;
  }
  return filter;
}

BloomFilter filter_union(const BloomFilter& a, const BloomFilter& b) {
  require_compatible(a, b);
  BloomFilter out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] |= b.words_[i];
  if (a.count_ && b.count_) {
    out.count_ = *a.count_ + *b.count_;
  } else {
    out.count_.reset();
  }
  return out;
}

BloomFilter filter_intersect(const BloomFilter& a, const BloomFilter& b) {
  require_compatible(a, b);
  BloomFilter out = a;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= b.words_[i];
  out.count_.reset();
  return out;
}

double estimate_cardinality(const BloomFilter& filter) {
  const auto& p = filter.params();
  const std::uint64_t bits = filter.bit_sum();
  if (bits == p.m) throw SaturationError("filter is saturated; cardinality cannot be estimated");
  const Rational mu(static_cast<unsigned long>(bits));
  const auto m = static_cast<unsigned>(p.m);
  if (p.variant == FilterVariant::Classic) return estimate_n(m, p.k, mu);
  return estimate_n(m, 1, mu) / p.k;
}

}  // namespace occbloom
