#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cartan/cartan.hpp"

// Seeded generators shared by the unit, property and acceptance tests.
namespace cartan::testkit {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  PointSet subset(std::size_t n, double p = 0.5) {
    PointSet s;
    for (std::size_t x = 0; x < n; ++x)
      if (coin(p)) s.insert(x);
    return s;
  }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
  std::mt19937_64 gen_;
};

inline SystemSpec direct_product_spec(const SystemSpec& a, const SystemSpec& b) {
  SystemSpec s;
  const std::size_t m = a.group_labels.size(), n = b.group_labels.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) s.group_labels.push_back("(" + a.group_labels[i] + "," + b.group_labels[j] + ")");
  s.table.assign(m * n, std::vector<std::size_t>(m * n));
  for (std::size_t x = 0; x < m * n; ++x)
    for (std::size_t y = 0; y < m * n; ++y) s.table[x][y] = a.table[x / n][y / n] * n + b.table[x % n][y % n];
  return s;
}

struct NamedSystem {
  std::string name;
  SystemRef sys;
};

/// Free systems with |X| <= 8 and |G| <= 4, single and multi orbit.
inline std::vector<NamedSystem> small_free_systems() {
  using namespace catalog;
  return {
      {"Z2", cyclic_translation(2)},
      {"Z3", cyclic_translation(3)},
      {"Z4", cyclic_translation(4)},
      {"K4", regular_orbits(klein_four_spec(), 1)},
      {"Z2x2", regular_orbits(cyclic_group_spec(2), 2)},
      {"Z2x3", regular_orbits(cyclic_group_spec(2), 3)},
      {"Z2x4", regular_orbits(cyclic_group_spec(2), 4)},
      {"Z3x2", regular_orbits(cyclic_group_spec(3), 2)},
      {"Z4x2", regular_orbits(cyclic_group_spec(4), 2)},
      {"K4x2", regular_orbits(klein_four_spec(), 2)},
  };
}

/// Every free action of a group of order <= 3 on at most `max_points` points,
/// up to isomorphism: disjoint unions of regular orbits.
inline std::vector<NamedSystem> free_systems_up_to(std::size_t max_points, std::size_t max_group) {
  std::vector<NamedSystem> out;
  for (std::size_t g = 1; g <= max_group; ++g)
    for (std::size_t copies = 1; copies * g <= max_points; ++copies)
      out.push_back({"Z" + std::to_string(g) + "^" + std::to_string(copies),
                     catalog::regular_orbits(catalog::cyclic_group_spec(g), copies)});
  return out;
}

/// Every action of Z/g (g <= max_group) on at most max_points points, up to
/// isomorphism: disjoint unions of cyclic orbits Z/g -> Z/d for d | g.
inline std::vector<NamedSystem> all_cyclic_actions_up_to(std::size_t max_points, std::size_t max_group) {
  std::vector<NamedSystem> out;
  for (std::size_t g = 1; g <= max_group; ++g) {
    std::vector<std::size_t> divisors;
    for (std::size_t d = 1; d <= g; ++d)
      if (g % d == 0) divisors.push_back(d);
    // nonincreasing sequences of orbit sizes with total <= max_points
    std::vector<std::size_t> sizes;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t total, std::size_t min_idx) {
      if (!sizes.empty()) {
        SystemSpec s = catalog::cyclic_group_spec(g);
        std::string name = "Z" + std::to_string(g) + "{";
        std::size_t base = 0;
        s.action.assign(g, {});
        for (auto d : sizes) {
          for (std::size_t x = 0; x < d; ++x) s.point_labels.push_back(std::to_string(base + x));
          for (std::size_t a = 0; a < g; ++a)
            for (std::size_t x = 0; x < d; ++x) s.action[a].push_back(base + (x + a) % d);
          base += d;
          name += std::to_string(d);
        }
        out.push_back({name + "}", make_system(s)});
      }
      for (std::size_t k = min_idx; k < divisors.size(); ++k) {
        std::size_t d = divisors[divisors.size() - 1 - k];
        if (total + d > max_points) continue;
        sizes.push_back(d);
        rec(total + d, k);
        sizes.pop_back();
      }
    };
    rec(0, 0);
  }
  return out;
}

/// Independent oracle for F < V: enumerates every assignment of a (group
/// element, target) pair to each tagged point (i, x), x in F_i, and accepts
/// when the tagged images (g.x, k) are distinct and lie in V. Dead states
/// (depth, used slots) are remembered so failing instances stay polynomial in
/// the number of slot subsets.
inline bool brute_force_subequivalent(const DynSystem& sys, const std::vector<PointSet>& F, const std::vector<PointSet>& V) {
  std::vector<std::size_t> tagged;
  for (const auto& f : F)
    for (auto x : f.points()) tagged.push_back(x);
  const std::size_t X = sys.num_points();
  std::vector<bool> taken(V.size() * X, false);
  std::set<std::vector<bool>> dead;
  std::function<bool(std::size_t)> assign = [&](std::size_t depth) {
    if (depth == tagged.size()) return true;
    std::vector<bool> key = taken;
    key.push_back(false);
    key.resize(key.size() + depth, true);
    if (dead.count(key)) return false;
    const std::size_t x = tagged[depth];
    for (std::size_t g = 0; g < sys.group_order(); ++g)
      for (std::size_t k = 0; k < V.size(); ++k) {
        const std::size_t y = sys.act(g, x);
        if (!V[k].contains(y) || taken[k * X + y]) continue;
        taken[k * X + y] = true;
        if (assign(depth + 1)) return true;
        taken[k * X + y] = false;
      }
    dead.insert(std::move(key));
    return false;
  };
  return assign(0);
}

inline RadScalar gauss_scalar(Rng& r) {
  static const std::vector<RadScalar> pool = {
      RadScalar(1), RadScalar(-1), RadScalar(2), RadScalar(Rational(1, 2)), RadScalar(Gauss::i()),
      RadScalar(Gauss(Rational(1), Rational(1))), RadScalar(Gauss(Rational(0), Rational(-3, 2))), RadScalar(Rational(-2, 3))};
  return r.pick(pool);
}

inline Rational positive_rational(Rng& r) {
  static const std::vector<Rational> pool = {Rational(1), Rational(1, 2), Rational(2), Rational(1, 3), Rational(3, 4), Rational(5, 2)};
  return r.pick(pool);
}

inline Func random_func(Rng& r, std::size_t n, PointSet support) {
  Func f(n);
  for (auto x : support.points()) f[x] = gauss_scalar(r);
  return f;
}

inline Func random_positive_func(Rng& r, std::size_t n, PointSet support) {
  Func f(n);
  for (auto x : support.points()) f[x] = RadScalar(positive_rational(r));
  return f;
}

/// Half the draws use pairwise disjoint coefficient supports so both answers
/// of the normalizer predicates are well represented.
inline CrossedElement random_element(Rng& r, const SystemRef& sys) {
  const std::size_t X = sys->num_points();
  CrossedElement a = CrossedElement::zero(sys);
  const bool disjoint = r.coin();
  PointSet used;
  for (std::size_t g = 0; g < sys->group_order(); ++g) {
    if (!r.coin(0.6)) continue;
    PointSet s = r.subset(X, 0.35);
    if (disjoint) s = s - used;
    used |= s;
    a.coeff(g) = random_func(r, X, s);
  }
  return a;
}

inline MatrixElement random_matrix(Rng& r, const SystemRef& sys, std::size_t n) {
  const std::size_t X = sys->num_points();
  MatrixElement m(sys, n);
  const bool disjoint = r.coin();
  for (std::size_t i = 0; i < n; ++i) {
    PointSet used;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t g = 0; g < sys->group_order(); ++g) {
        if (!r.coin(0.35)) continue;
        PointSet s = r.subset(X, 0.3);
        if (disjoint) s = s - used;
        used |= s;
        m.at(i, j).coeff(g) = random_func(r, X, s);
      }
  }
  return m;
}

inline DiagTuple random_tuple(Rng& r, std::size_t X, std::size_t len, double density = 0.4) {
  std::vector<Func> e;
  for (std::size_t i = 0; i < len; ++i) e.push_back(random_positive_func(r, X, r.subset(X, density)));
  return DiagTuple(std::move(e));
}

/// Random castle map data: towers with singleton or small bases, shapes of
/// size n starting anywhere, rational weights in (0, 1] and phases in {1, -1, i, -i}.
inline CastleOzmData random_ozm_data(Rng& r, const DynSystem& sys, std::size_t n, std::size_t max_towers) {
  const std::size_t X = sys.num_points(), G = sys.group_order();
  static const std::vector<RadScalar> phases = {RadScalar(1), RadScalar(-1), RadScalar(Gauss::i()), RadScalar(-RadScalar(Gauss::i()))};
  static const std::vector<Rational> weights = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(3, 4), Rational(1, 5)};
  CastleOzmData d;
  d.n = n;
  PointSet used;
  std::size_t towers = 1 + r.below(max_towers);
  for (std::size_t attempt = 0; attempt < 20 && d.castle.towers.size() < towers; ++attempt) {
    std::vector<std::size_t> S;
    std::vector<bool> taken(G, false);
    while (S.size() < n) {
      auto s = r.below(G);
      if (!taken[s]) {
        taken[s] = true;
        S.push_back(s);
      }
    }
    PointSet V = r.subset(X, 0.3);
    if (V.empty()) V.insert(r.below(X));
    PointSet levels;
    bool ok = true;
    for (auto s : S) {
      auto lv = sys.translate(s, V);
      if (!lv.disjoint(levels) || !lv.disjoint(used)) ok = false;
      levels |= lv;
    }
    if (!ok) continue;
    used |= levels;
    Func f(X);
    for (auto x : V.points())
      if (r.coin(0.85)) f[x] = RadScalar(r.pick(weights));
    std::vector<Func> theta;
    for (std::size_t i = 0; i < n; ++i) {
      Func th = Func::constant(X, RadScalar(1));
      for (auto x : V.points()) th[x] = r.pick(phases);
      theta.push_back(th);
    }
    d.castle.towers.push_back({V, S});
    d.weights.push_back(f);
    d.phases.push_back(theta);
  }
  return d;
}

}  // namespace cartan::testkit
