#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "excoef/error.hpp"

namespace excoef {

/// Bit mask over locations; bit t set means location t is in the subset.
using SubsetMask = std::uint32_t;

/// Subset of a ground set {0,...,m-1}, stored as a bit mask.
///
/// The mask doubles as the canonical table index: set-function tables are
/// flat arrays of length 2^m indexed by mask value.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(SubsetMask mask) : mask_(mask) {}

  static constexpr Subset singleton(int t) { return Subset(SubsetMask{1} << t); }
  static constexpr Subset full(int m) { return Subset((SubsetMask{1} << m) - 1u); }
  static Subset from_indices(const std::vector<int>& indices);

  constexpr SubsetMask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  int count() const { return std::popcount(mask_); }
  constexpr bool contains(int t) const { return t >= 0 && t < 32 && ((mask_ >> t) & 1u) != 0; }
  constexpr bool within(int m) const { return m >= 32 || (mask_ >> m) == 0; }
  constexpr bool subset_of(Subset other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(Subset other) const { return (mask_ & other.mask_) != 0; }

  /// Member locations in increasing order.
  std::vector<int> indices() const;

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.mask_ | b.mask_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.mask_ & b.mask_); }
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(Subset a, Subset b) { return a.mask_ == b.mask_; }
  friend constexpr bool operator<(Subset a, Subset b) { return a.mask_ < b.mask_; }

 private:
  SubsetMask mask_ = 0;
};

/// Largest ground set accepted by GroundSet. Defaults to 20, can be raised or
/// lowered with the EXCOEF_MAX_M environment variable; the hard ceiling is 24.
int ground_set_cap();

/// Finite collection of locations {0,...,m-1} with optional distinct labels.
class GroundSet {
 public:
  explicit GroundSet(int size);
  GroundSet(int size, std::vector<std::string> labels);

  int size() const { return size_; }
  /// Number of table entries, 2^size.
  std::size_t table_size() const { return std::size_t{1} << size_; }
  Subset full() const { return Subset::full(size_); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Label of location t, falling back to its decimal index.
  std::string label(int t) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.size_ == b.size_ && a.labels_ == b.labels_;
  }

 private:
  int size_ = 0;
  std::vector<std::string> labels_;
};

/// Canonical textual form: member indices in increasing order joined by
/// commas ("0,2"); the empty subset formats as "".
std::string format_subset(Subset s);

/// Parses the canonical textual form; indices must be strictly increasing
/// and below m. Throws InvalidSubset otherwise.
Subset parse_subset(std::string_view text, int m);

/// Throws InvalidSubset unless s fits inside a ground set of size m.
void require_within(Subset s, int m);

}  // namespace excoef
