#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "cartan/errors.hpp"

namespace cartan {

/// Subset of a finite point set X = {0, ..., |X|-1}, |X| <= 64.
class PointSet {
public:
  static constexpr std::size_t kMaxPoints = 64;

  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t mask) : mask_(mask) {}
  PointSet(std::initializer_list<std::size_t> points) {
    for (auto p : points) insert(p);
  }

  static PointSet full(std::size_t n) {
    if (n > kMaxPoints) throw ResourceBound("point sets support at most 64 points");
    return PointSet(n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  std::uint64_t mask() const { return mask_; }
  bool contains(std::size_t p) const { return p < kMaxPoints && ((mask_ >> p) & 1U); }
  void insert(std::size_t p) {
    if (p >= kMaxPoints) throw IndexOutOfRange("point index " + std::to_string(p) + " exceeds 63");
    mask_ |= std::uint64_t{1} << p;
  }
  void erase(std::size_t p) {
    if (p < kMaxPoints) mask_ &= ~(std::uint64_t{1} << p);
  }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const { return mask_ == 0; }
  bool subset_of(PointSet o) const { return (mask_ & ~o.mask_) == 0; }
  bool disjoint(PointSet o) const { return (mask_ & o.mask_) == 0; }

  std::vector<std::size_t> points() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  friend PointSet operator|(PointSet a, PointSet b) { return PointSet(a.mask_ | b.mask_); }
  friend PointSet operator&(PointSet a, PointSet b) { return PointSet(a.mask_ & b.mask_); }
  friend PointSet operator-(PointSet a, PointSet b) { return PointSet(a.mask_ & ~b.mask_); }
  friend PointSet operator^(PointSet a, PointSet b) { return PointSet(a.mask_ ^ b.mask_); }
  PointSet& operator|=(PointSet b) { mask_ |= b.mask_; return *this; }
  friend bool operator==(PointSet a, PointSet b) { return a.mask_ == b.mask_; }
  friend auto operator<=>(PointSet a, PointSet b) { return a.mask_ <=> b.mask_; }

private:
  std::uint64_t mask_ = 0;
};

}  // namespace cartan
