#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cartan/comparison.hpp"

namespace cartan {

/// Indicator tuples of size <= max_n modulo mutual subequivalence.
///
/// classes[c] is the shortlex-least tuple of its class (shorter first, then
/// lexicographic by point mask). order[x][y] holds iff [x] <= [y]. add[x][y]
/// is the class of [x] + [y], or -1 when that class has no representative of
/// size <= max_n.
struct TypeSemigroup {
  std::size_t max_n = 0;
  std::vector<std::vector<PointSet>> classes;
  std::vector<std::vector<bool>> order;
  std::vector<std::vector<std::int32_t>> add;

  std::size_t size() const { return classes.size(); }
};

struct SemigroupBudget {
  std::uint64_t max_tuples = 2'000'000;
};

namespace detail {

using OrbitCounts = std::vector<std::uint32_t>;

inline OrbitCounts orbit_counts(const DynSystem& sys, const std::vector<PointSet>& tuple) {
  OrbitCounts c(sys.orbits().size(), 0);
  for (auto s : tuple)
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += static_cast<std::uint32_t>((s & sys.orbits()[k]).size());
  return c;
}

inline bool dominated(const OrbitCounts& a, const OrbitCounts& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

inline bool shortlex_less(const std::vector<PointSet>& a, const std::vector<PointSet>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline bool mutually_subequivalent(const DynSystem& sys, const std::vector<PointSet>& a, const std::vector<PointSet>& b) {
  return search_subequivalence(sys, a, b).has_value() && search_subequivalence(sys, b, a).has_value();
}

}  // namespace detail

/// Classes are bucketed by per-orbit point counts, which every witness
/// preserves in the <= direction; membership and order are then confirmed by
/// the witness search itself.
inline TypeSemigroup type_semigroup(const DynSystem& sys, std::size_t max_n, SemigroupBudget budget = {}) {
  TypeSemigroup W;
  W.max_n = max_n;
  if (max_n == 0) return W;
  const std::size_t X = sys.num_points();
  if (X >= 32) throw ResourceBound("too many subsets to enumerate");
  const std::uint64_t subsets = 1ull << X;

  std::map<detail::OrbitCounts, std::size_t> bucket;
  std::vector<detail::OrbitCounts> counts;
  std::uint64_t tuples = 0;

  // Nondecreasing mask sequences enumerate each multiset once; they come out
  // in shortlex order, so the first tuple seen in a class is its canonical one.
  std::vector<std::uint64_t> seq;
  auto visit = [&](const std::vector<std::uint64_t>& masks) {
    if (++tuples > budget.max_tuples) throw ResourceBound("type semigroup enumeration exceeds the tuple budget");
    std::vector<PointSet> t;
    for (auto m : masks) t.push_back(PointSet(m));
    auto c = detail::orbit_counts(sys, t);
    auto it = bucket.find(c);
    if (it == bucket.end()) {
      bucket.emplace(c, W.classes.size());
      W.classes.push_back(std::move(t));
      counts.push_back(std::move(c));
      return;
    }
    if (!detail::mutually_subequivalent(sys, t, W.classes[it->second]))
      throw std::logic_error("type_semigroup: equal orbit counts without mutual subequivalence");
  };
  for (std::size_t len = 1; len <= max_n; ++len) {
    seq.assign(len, 0);
    while (true) {
      visit(seq);
      std::size_t pos = len;
      while (pos > 0 && seq[pos - 1] + 1 == subsets) --pos;
      if (pos == 0) break;
      ++seq[pos - 1];
      for (std::size_t q = pos; q < len; ++q) seq[q] = seq[pos - 1];
    }
  }

  const std::size_t n = W.classes.size();
  W.order.assign(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (detail::dominated(counts[x], counts[y]))
        W.order[x][y] = search_subequivalence(sys, W.classes[x], W.classes[y]).has_value();

  W.add.assign(n, std::vector<std::int32_t>(n, -1));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      auto sum = W.classes[x];
      sum.insert(sum.end(), W.classes[y].begin(), W.classes[y].end());
      auto it = bucket.find(detail::orbit_counts(sys, sum));
      if (it == bucket.end()) continue;
      if (!detail::mutually_subequivalent(sys, sum, W.classes[it->second]))
        throw std::logic_error("type_semigroup: sum not equivalent to its bucket representative");
      W.add[x][y] = W.add[y][x] = static_cast<std::int32_t>(it->second);
    }
  return W;
}

struct UnperforationResult {
  bool holds = true;
  struct Violation {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t n = 0;  // (n+1)x <= ny but not x <= y
  };
  std::optional<Violation> counterexample;
};

/// (n+1)x <= ny implies x <= y, for every pair and every n whose multiples
/// are represented in the table.
inline UnperforationResult almost_unperforation_check(const TypeSemigroup& W) {
  const std::size_t n = W.size();
  // multiples[x][m] = class of m*x for m >= 1 while it stays in the table.
  std::vector<std::vector<std::int32_t>> multiples(n);
  for (std::size_t x = 0; x < n; ++x) {
    multiples[x] = {-1, static_cast<std::int32_t>(x)};
    while (true) {
      auto prev = multiples[x].back();
      auto next = W.add[static_cast<std::size_t>(prev)][x];
      if (next < 0 || multiples[x].size() > n + 1) break;
      multiples[x].push_back(next);
    }
  }
  UnperforationResult r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (W.order[x][y]) continue;
      for (std::size_t m = 1; m + 1 < multiples[x].size() && m < multiples[y].size(); ++m) {
        auto lhs = static_cast<std::size_t>(multiples[x][m + 1]);
        auto rhs = static_cast<std::size_t>(multiples[y][m]);
        if (W.order[lhs][rhs]) {
          r.holds = false;
          r.counterexample = UnperforationResult::Violation{x, y, m};
          return r;
        }
      }
    }
  return r;
}

}  // namespace cartan
