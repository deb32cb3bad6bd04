#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace genchar {

/// Subset of {1, ..., n} stored as a bitmask: bit (k-1) set means k is a member.
class SubsetIndex {
 public:
  static constexpr unsigned max_size = 62;

  /// Throws ShapeError if n > max_size or mask has bits at or above n.
  SubsetIndex(std::uint64_t mask, unsigned n);

  static SubsetIndex empty(unsigned n) { return {0, n}; }
  static SubsetIndex full(unsigned n) { return {full_mask(n), n}; }
  /// Members given 1-based.
  static SubsetIndex of(std::initializer_list<unsigned> members, unsigned n);

  static constexpr std::uint64_t full_mask(unsigned n) {
    return n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
  }

  std::uint64_t mask() const { return mask_; }
  unsigned ambient() const { return n_; }
  unsigned count() const { return static_cast<unsigned>(std::popcount(mask_)); }
  bool is_empty() const { return mask_ == 0; }
  bool is_full() const { return mask_ == full_mask(n_); }

  /// k is 1-based.
  bool contains(unsigned k) const { return k >= 1 && k <= n_ && ((mask_ >> (k - 1)) & 1U); }

  /// The complement within {1, ..., n}.
  SubsetIndex complement() const { return {full_mask(n_) & ~mask_, n_}; }

  /// 0-based positions of the members, ascending.
  std::vector<std::size_t> positions() const;

  /// "{1,3}" style rendering with 1-based members.
  std::string to_string() const;

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  std::uint64_t mask_;
  unsigned n_;
};

}  // namespace genchar
