#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartan/errors.hpp"
#include "cartan/point_set.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Raw description of a finite group acting on a finite set, before any
/// validation. Group elements and points are referred to by index.
struct SystemSpec {
  std::vector<std::string> group_labels;
  std::vector<std::vector<std::size_t>> table;   // table[a][b] = index of a*b
  std::vector<std::string> point_labels;
  std::vector<std::vector<std::size_t>> action;  // action[g][x] = index of g.x
};

class FiniteGroup {
public:
  FiniteGroup() = default;

  std::size_t order() const { return labels_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_ && a.labels_ == b.labels_;
  }

private:
  friend class DynSystem;

  std::vector<std::string> labels_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// Validated action of a finite group on a finite point set.
class DynSystem {
public:
  /// Validates the group and action axioms; throws StructureError naming the
  /// violated axiom and the offending indices.
  explicit DynSystem(const SystemSpec& spec);

  const FiniteGroup& group() const { return group_; }
  std::size_t num_points() const { return point_labels_.size(); }
  std::size_t group_order() const { return group_.order(); }
  std::size_t act(std::size_t g, std::size_t x) const { return action_[g * num_points() + x]; }
  const std::string& point_label(std::size_t x) const { return point_labels_[x]; }
  const std::vector<std::string>& point_labels() const { return point_labels_; }

  std::optional<std::size_t> find_point(const std::string& label) const {
    for (std::size_t i = 0; i < point_labels_.size(); ++i)
      if (point_labels_[i] == label) return i;
    return std::nullopt;
  }

  bool is_free() const { return free_; }
  bool is_minimal() const { return orbits_.size() <= 1; }

  /// Orbits ordered by least point index.
  const std::vector<PointSet>& orbits() const { return orbits_; }
  std::size_t orbit_index(std::size_t x) const { return orbit_of_[x]; }
  std::size_t orbit_representative(std::size_t k) const { return orbits_[k].points().front(); }

  PointSet all_points() const { return PointSet::full(num_points()); }

  /// g . S
  PointSet translate(std::size_t g, PointSet s) const {
    PointSet out;
    for (auto x : s.points()) out.insert(act(g, x));
    return out;
  }

  SystemSpec spec() const;

  friend bool operator==(const DynSystem& a, const DynSystem& b) {
    return a.group_ == b.group_ && a.point_labels_ == b.point_labels_ && a.action_ == b.action_;
  }

private:
  FiniteGroup group_;
  std::vector<std::string> point_labels_;
  std::vector<std::size_t> action_;
  std::vector<PointSet> orbits_;
  std::vector<std::size_t> orbit_of_;
  bool free_ = true;
};

using SystemRef = std::shared_ptr<const DynSystem>;

inline SystemRef make_system(const SystemSpec& spec) { return std::make_shared<const DynSystem>(spec); }

inline bool same_system(const SystemRef& a, const SystemRef& b) {
  return a == b || (a && b && *a == *b);
}

inline DynSystem::DynSystem(const SystemSpec& spec) {
  const std::size_t n = spec.group_labels.size();
  const std::size_t m = spec.point_labels.size();
  if (n == 0) throw StructureError("group has no elements");
  if (m > PointSet::kMaxPoints) throw StructureError("at most 64 points are supported");
  if (spec.table.size() != n) throw StructureError("multiplication table has wrong number of rows");

  group_.labels_ = spec.group_labels;
  group_.table_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (spec.table[a].size() != n)
      throw StructureError("multiplication table row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (spec.table[a][b] >= n)
        throw StructureError("closure: table[" + std::to_string(a) + "][" + std::to_string(b) + "] out of range");
      group_.table_[a * n + b] = spec.table[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (group_.mul(group_.mul(a, b), c) != group_.mul(a, group_.mul(b, c)))
          throw StructureError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")");

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = group_.mul(e, a) == a && group_.mul(a, e) == a;
    if (ok) identity = e;
  }
  if (!identity) throw StructureError("identity: no two-sided identity element");
  group_.identity_ = *identity;

  group_.inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (group_.mul(a, b) == *identity && group_.mul(b, a) == *identity) group_.inverse_[a] = b;
    if (group_.inverse_[a] == n) throw StructureError("inverse: element " + std::to_string(a) + " has no inverse");
  }

  point_labels_ = spec.point_labels;
  if (spec.action.size() != n) throw StructureError("action table has wrong number of rows");
  action_.assign(n * m, 0);
  for (std::size_t g = 0; g < n; ++g) {
    if (spec.action[g].size() != m)
      throw StructureError("action row " + std::to_string(g) + " has wrong length");
    for (std::size_t x = 0; x < m; ++x) {
      if (spec.action[g][x] >= m)
        throw StructureError("action[" + std::to_string(g) + "][" + std::to_string(x) + "] out of range");
      action_[g * m + x] = spec.action[g][x];
    }
  }
  for (std::size_t x = 0; x < m; ++x)
    if (act(*identity, x) != x) throw StructureError("identity action moves point " + std::to_string(x));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t x = 0; x < m; ++x)
        if (act(g, act(h, x)) != act(group_.mul(g, h), x))
          throw StructureError("compatibility g.(h.x) = (gh).x fails at (" + std::to_string(g) + "," +
                               std::to_string(h) + "," + std::to_string(x) + ")");

  for (std::size_t g = 0; g < n && free_; ++g)
    if (g != *identity)
      for (std::size_t x = 0; x < m; ++x)
        if (act(g, x) == x) {
          free_ = false;
          break;
        }

  orbit_of_.assign(m, m);
  for (std::size_t x = 0; x < m; ++x) {
    if (orbit_of_[x] != m) continue;
    PointSet orbit;
    for (std::size_t g = 0; g < n; ++g) orbit.insert(act(g, x));
    for (auto y : orbit.points()) orbit_of_[y] = orbits_.size();
    orbits_.push_back(orbit);
  }
}

inline SystemSpec DynSystem::spec() const {
  SystemSpec s;
  const std::size_t n = group_order();
  s.group_labels = group_.labels();
  s.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s.table[a][b] = group_.mul(a, b);
  s.point_labels = point_labels_;
  s.action.assign(n, std::vector<std::size_t>(num_points()));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t x = 0; x < num_points(); ++x) s.action[g][x] = act(g, x);
  return s;
}

struct SystemReport {
  bool free = false;
  bool minimal = false;
  std::size_t num_orbits = 0;
};

/// Builds and validates; StructureError on any violated axiom.
inline SystemReport validate_system(const SystemSpec& spec) {
  DynSystem sys(spec);
  return {sys.is_free(), sys.is_minimal(), sys.orbits().size()};
}

inline SystemReport validate_system(const DynSystem& sys) { return validate_system(sys.spec()); }

inline std::vector<PointSet> orbits(const DynSystem& sys) { return sys.orbits(); }

/// Nonnegative rational weights on points summing to 1.
struct InvariantMeasure {
  std::vector<Rational> weights;

  Rational operator()(PointSet s) const {
    Rational total = 0;
    for (auto x : s.points()) total += weights[x];
    return total;
  }
  friend bool operator==(const InvariantMeasure&, const InvariantMeasure&) = default;
};

/// The ergodic invariant measures: uniform on each orbit, one per orbit.
inline std::vector<InvariantMeasure> extreme_invariant_measures(const DynSystem& sys) {
  std::vector<InvariantMeasure> out;
  for (const auto& orbit : sys.orbits()) {
    InvariantMeasure mu;
    mu.weights.assign(sys.num_points(), Rational(0));
    Rational w(1, static_cast<unsigned long>(orbit.size()));
    w.canonicalize();
    for (auto x : orbit.points()) mu.weights[x] = w;
    out.push_back(std::move(mu));
  }
  return out;
}

/// (Z/n x G) acting on {0..n-1} x X by cyclic shift times the given action.
/// Group element (c, g) has index c*|G| + g, point (i, x) has index i*|X| + x.
inline SystemRef product_with_cyclic(const DynSystem& sys, std::size_t n) {
  if (n == 0) throw StructureError("cyclic factor must have positive order");
  const std::size_t G = sys.group_order();
  const std::size_t X = sys.num_points();
  SystemSpec s;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < G; ++g)
      s.group_labels.push_back("(" + std::to_string(c) + "," + sys.group().label(g) + ")");
  s.table.assign(n * G, std::vector<std::size_t>(n * G));
  for (std::size_t c1 = 0; c1 < n; ++c1)
    for (std::size_t g1 = 0; g1 < G; ++g1)
      for (std::size_t c2 = 0; c2 < n; ++c2)
        for (std::size_t g2 = 0; g2 < G; ++g2)
          s.table[c1 * G + g1][c2 * G + g2] = ((c1 + c2) % n) * G + sys.group().mul(g1, g2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < X; ++x)
      s.point_labels.push_back("(" + std::to_string(i) + "," + sys.point_label(x) + ")");
  s.action.assign(n * G, std::vector<std::size_t>(n * X));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < G; ++g)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t x = 0; x < X; ++x) s.action[c * G + g][i * X + x] = ((i + c) % n) * X + sys.act(g, x);
  return make_system(s);
}

}  // namespace cartan
