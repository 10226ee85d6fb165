#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartan/comparison.hpp"
#include "cartan/normalizers.hpp"
#include "cartan/representation.hpp"

namespace cartan {

/// Base V and ordered shape S; the levels are s.V for s in S.
struct Tower {
  PointSet V;
  std::vector<std::size_t> S;
  friend bool operator==(const Tower&, const Tower&) = default;
};

struct Castle {
  std::vector<Tower> towers;
  friend bool operator==(const Castle&, const Castle&) = default;
};

/// All levels of all towers pairwise disjoint.
inline bool validate_castle(const DynSystem& sys, const Castle& c) {
  PointSet seen;
  for (const auto& t : c.towers) {
    if (!t.V.subset_of(sys.all_points())) return false;
    for (auto s : t.S) {
      if (s >= sys.group_order()) return false;
      PointSet level = sys.translate(s, t.V);
      if (!level.disjoint(seen)) return false;
      seen |= level;
    }
  }
  return true;
}

/// Union of all levels.
inline PointSet castle_footprint(const DynSystem& sys, const Castle& c) {
  PointSet out;
  for (const auto& t : c.towers)
    for (auto s : t.S) out |= sys.translate(s, t.V);
  return out;
}

/// max over g in K of |gS symmetric-difference S| / |S|.
inline Rational shape_invariance(const FiniteGroup& grp, const std::vector<std::size_t>& S,
                                 const std::vector<std::size_t>& K) {
  if (S.empty()) throw EmptyShape("shape must be nonempty");
  std::vector<bool> in(grp.order(), false);
  for (auto s : S) {
    if (s >= grp.order()) throw IndexOutOfRange("shape element out of range");
    in[s] = true;
  }
  std::size_t distinct = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  std::size_t worst = 0;
  for (auto g : K) {
    if (g >= grp.order()) throw IndexOutOfRange("K element out of range");
    std::vector<bool> moved(grp.order(), false);
    for (std::size_t s = 0; s < grp.order(); ++s)
      if (in[s]) moved[grp.mul(g, s)] = true;
    std::size_t diff = 0;
    for (std::size_t s = 0; s < grp.order(); ++s) diff += moved[s] != in[s];
    worst = std::max(worst, diff);
  }
  Rational r(static_cast<long>(worst), static_cast<unsigned long>(distinct));
  r.canonicalize();
  return r;
}

struct AlmostFinitenessReport {
  bool invariance = false;   // (a)
  bool small_primes = false; // (b)
  bool remainder = false;    // (c)
  std::optional<bool> diameter;  // set only in strict-diameter mode
  Rational max_invariance;
  PointSet remainder_set;
  PointSet prime_set;
  std::optional<Witness> witness;

  bool passed() const { return invariance && small_primes && remainder && diameter.value_or(true); }
};

/// (a) shape invariance below delta, (b) |S'_t| < delta |S_t|, (c) the
/// uncovered remainder is subequivalent to the union of the S'_t levels.
/// With strict_diameter every base must be a single point.
inline AlmostFinitenessReport almost_finiteness_certificate(const DynSystem& sys, const std::vector<std::size_t>& K,
                                                            const Rational& delta, const Castle& c,
                                                            const std::vector<std::vector<std::size_t>>& primes,
                                                            bool strict_diameter = false) {
  if (!validate_castle(sys, c)) throw InvalidCastle("castle levels are not pairwise disjoint");
  if (primes.size() != c.towers.size()) throw InvalidCastle("one S' per tower is required");
  for (std::size_t t = 0; t < primes.size(); ++t)
    for (auto s : primes[t])
      if (std::find(c.towers[t].S.begin(), c.towers[t].S.end(), s) == c.towers[t].S.end())
        throw InvalidCastle("S' of tower " + std::to_string(t) + " is not contained in S");

  AlmostFinitenessReport r;
  r.invariance = true;
  r.small_primes = true;
  for (std::size_t t = 0; t < c.towers.size(); ++t) {
    const auto& tw = c.towers[t];
    Rational inv = shape_invariance(sys.group(), tw.S, K);
    if (inv > r.max_invariance) r.max_invariance = inv;
    if (!(inv < delta)) r.invariance = false;
    if (!(Rational(static_cast<long>(primes[t].size())) < delta * static_cast<long>(tw.S.size()))) r.small_primes = false;
    for (auto s : primes[t]) r.prime_set |= sys.translate(s, tw.V);
  }
  r.remainder_set = sys.all_points() - castle_footprint(sys, c);
  r.witness = search_subequivalence(sys, {r.remainder_set}, {r.prime_set});
  r.remainder = r.witness.has_value();
  if (strict_diameter)
    r.diameter = std::all_of(c.towers.begin(), c.towers.end(), [](const Tower& t) { return t.V.size() == 1; });
  return r;
}

/// Castle with weights f_t (supp f_t in V_t, 0 <= f_t <= 1) and unit-modulus
/// phases theta[t][i] on supp f_t; every shape has exactly n elements.
struct CastleOzmData {
  Castle castle;
  std::size_t n = 0;
  std::vector<Func> weights;
  std::vector<std::vector<Func>> phases;
  friend bool operator==(const CastleOzmData&, const CastleOzmData&) = default;
};

using OrderZeroMap = UnitMap;

inline void validate_ozm_data(const DynSystem& sys, const CastleOzmData& d) {
  if (d.n == 0) throw InvalidCastleData("matrix size must be positive");
  if (!validate_castle(sys, d.castle)) throw InvalidCastleData("castle levels are not pairwise disjoint");
  const std::size_t T = d.castle.towers.size();
  if (d.weights.size() != T || d.phases.size() != T) throw InvalidCastleData("one weight and one phase row per tower");
  for (std::size_t t = 0; t < T; ++t) {
    const auto& f = d.weights[t];
    if (d.castle.towers[t].S.size() != d.n) throw InvalidCastleData("tower " + std::to_string(t) + " has the wrong shape size");
    if (f.size() != sys.num_points()) throw InvalidCastleData("weight size does not match the system");
    if (!f.is_positive()) throw InvalidCastleData("weight " + std::to_string(t) + " is not positive");
    if (!open_support(f).subset_of(d.castle.towers[t].V)) throw InvalidCastleData("weight " + std::to_string(t) + " leaves its base");
    for (const auto& v : f.values())
      if (v.abs_sq() > 1) throw InvalidCastleData("weight " + std::to_string(t) + " is not a contraction");
    if (d.phases[t].size() != d.n) throw InvalidCastleData("tower " + std::to_string(t) + " needs n phases");
    for (const auto& theta : d.phases[t]) {
      if (theta.size() != sys.num_points()) throw InvalidCastleData("phase size does not match the system");
      for (auto x : open_support(f).points())
        if (theta[x].abs_sq() != 1) throw InvalidCastleData("phase is not unit-modulus on supp f");
    }
  }
}

/// phi(e_ij) = sum_t u_{s_ti} theta_ti conj(theta_tj) f_t u_{s_tj}^*, with no
/// verification. Use build_castle_ozm for the checked version.
inline OrderZeroMap assemble_castle_ozm(const SystemRef& sys, const CastleOzmData& d) {
  OrderZeroMap phi(sys, d.n);
  for (std::size_t t = 0; t < d.castle.towers.size(); ++t) {
    const auto& tw = d.castle.towers[t];
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j) {
        Func g = d.phases[t][i] * d.phases[t][j].conj() * d.weights[t];
        if (g.is_zero()) continue;
        phi(i, j) = phi(i, j) + CrossedElement::u(sys, tw.S[i]) * CrossedElement::diagonal(sys, g) *
                                    CrossedElement::u(sys, tw.S[j]).adjoint();
      }
  }
  return phi;
}

namespace detail {

template <class S>
std::vector<S> unit_matrix(std::size_t n, std::size_t i, std::size_t j, const S& c) {
  std::vector<S> m(n * n, scalar_traits<S>::zero());
  m[i * n + j] = c;
  return m;
}

template <class S>
std::vector<S> sum_matrices(std::vector<S> a, const std::vector<S>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = a[k] + b[k];
  return a;
}

/// The documented family of orthogonal positive pairs in M_n: complementary
/// diagonal projections over every subset, the real pairs
/// (e_ii + e_jj +- (e_ij + e_ji))/2 and the complex pairs
/// (e_ii + e_jj -+ i e_ij +- i e_ji)/2.
inline std::vector<std::pair<std::vector<RadScalar>, std::vector<RadScalar>>> orthogonal_pair_family(std::size_t n) {
  std::vector<std::pair<std::vector<RadScalar>, std::vector<RadScalar>>> out;
  const RadScalar one(1), half(Rational(1, 2)), ihalf(Gauss(Rational(0), Rational(1, 2)));
  if (n <= 10)
    for (std::uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
      std::vector<RadScalar> p(n * n), q(n * n);
      for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? p : q)[i * n + i] = one;
      out.emplace_back(p, q);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto diag = sum_matrices(unit_matrix(n, i, i, half), unit_matrix(n, j, j, half));
      auto off = sum_matrices(unit_matrix(n, i, j, half), unit_matrix(n, j, i, half));
      auto neg_off = sum_matrices(unit_matrix(n, i, j, -half), unit_matrix(n, j, i, -half));
      out.emplace_back(sum_matrices(diag, off), sum_matrices(diag, neg_off));
      auto rot = sum_matrices(unit_matrix(n, i, j, -ihalf), unit_matrix(n, j, i, ihalf));
      auto neg_rot = sum_matrices(unit_matrix(n, i, j, ihalf), unit_matrix(n, j, i, -ihalf));
      out.emplace_back(sum_matrices(diag, rot), sum_matrices(diag, neg_rot));
    }
  return out;
}

}  // namespace detail

/// Exact order-zero test: phi(e_ij) phi(e_kl) = [j = k] phi(e_i1) phi(e_1l)
/// for all indices, which characterizes order zero among c.p. maps, followed
/// by product vanishing on the orthogonal pair family.
inline bool verify_order_zero(const OrderZeroMap& phi) {
  const std::size_t n = phi.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const CrossedElement through_first = phi(i, 0) * phi(0, l);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          CrossedElement lhs = phi(i, j) * phi(k, l);
          if (j == k ? !(lhs == through_first) : !lhs.is_zero()) return false;
        }
    }
  for (const auto& [p, q] : detail::orthogonal_pair_family(n))
    if (!(phi.apply(p) * phi.apply(q)).is_zero()) return false;
  return true;
}

struct CpcReport {
  double min_choi_eigenvalue = 0.0;
  double unit_image_norm = 0.0;
  bool completely_positive = false;
  bool contractive = false;

  bool passed() const { return completely_positive && contractive; }
};

/// Choi matrix [pi(phi(e_ij))] positive and ||phi(1)|| <= 1, both within tol.
template <class S>
CpcReport cpc_report(const BasicUnitMap<S>& phi, double tol = kDefaultTolerance) {
  CpcReport r;
  const std::size_t n = phi.n;
  const auto d = faithful_rep(BasicCrossed<S>::zero(phi.sys)).rows();
  FloatMatrix choi = FloatMatrix::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      choi.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) = faithful_rep(phi(i, j));
  r.min_choi_eigenvalue = n == 0 ? 0.0 : min_hermitian_eigenvalue(choi);
  r.completely_positive = n == 0 || (hermitian_defect(choi) <= tol && r.min_choi_eigenvalue >= -tol);
  r.unit_image_norm = n == 0 ? 0.0 : operator_norm(phi.image_of_unit()).value;
  r.contractive = r.unit_image_norm <= 1.0 + tol;
  return r;
}

template <class S>
bool verify_cpc(const BasicUnitMap<S>& phi, double tol = kDefaultTolerance) {
  return cpc_report(phi, tol).passed();
}

template <class S>
bool verify_normalizer_preserving(const BasicUnitMap<S>& phi) {
  return check_normalizer_preserving(phi).preserving;
}

/// Assembles phi and re-verifies c.p.c., order zero and normalizer preservation.
inline OrderZeroMap build_castle_ozm(const SystemRef& sys, const CastleOzmData& d) {
  validate_ozm_data(*sys, d);
  OrderZeroMap phi = assemble_castle_ozm(sys, d);
  if (!verify_cpc(phi)) throw std::logic_error("castle map is not c.p.c.");
  if (!verify_order_zero(phi)) throw std::logic_error("castle map is not order zero");
  if (!verify_normalizer_preserving(phi)) throw std::logic_error("castle map is not normalizer preserving");
  return phi;
}

/// Equivalent data in canonical form: every shape starts at e (the tower is
/// moved by s_1), bases shrink to supp f_t, phases are rotated so theta_1 = 1
/// and vanish off supp f_t, towers with equal shapes merge, empty towers
/// drop, and towers are sorted by (shape, base).
inline CastleOzmData canonical_ozm_data(const DynSystem& sys, const CastleOzmData& d) {
  const auto& grp = sys.group();
  const std::size_t X = sys.num_points();
  std::map<std::vector<std::size_t>, std::size_t> by_shape;
  CastleOzmData out;
  out.n = d.n;
  for (std::size_t t = 0; t < d.castle.towers.size(); ++t) {
    const auto& tw = d.castle.towers[t];
    const std::size_t a = tw.S.front();
    const std::size_t ai = grp.inv(a);
    Func f = d.weights[t].compose(sys, ai);
    PointSet base = open_support(f);
    if (base.empty()) continue;
    std::vector<std::size_t> shape;
    for (auto s : tw.S) shape.push_back(grp.mul(s, ai));
    Func first = d.phases[t][0].compose(sys, ai);
    std::vector<Func> theta;
    for (std::size_t i = 0; i < d.n; ++i) {
      Func th = Func::zero(X);
      Func moved = d.phases[t][i].compose(sys, ai);
      for (auto x : base.points()) th[x] = moved[x] * first[x].conj();
      theta.push_back(th);
    }
    auto it = by_shape.find(shape);
    if (it == by_shape.end()) {
      by_shape.emplace(shape, out.castle.towers.size());
      out.castle.towers.push_back({base, shape});
      out.weights.push_back(f);
      out.phases.push_back(theta);
      continue;
    }
    auto k = it->second;
    out.castle.towers[k].V |= base;
    out.weights[k] = out.weights[k] + f;
    for (std::size_t i = 0; i < d.n; ++i) out.phases[k][i] = out.phases[k][i] + theta[i];
  }
  std::vector<std::size_t> idx(out.castle.towers.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
    const auto& tp = out.castle.towers[p];
    const auto& tq = out.castle.towers[q];
    return std::pair(tp.S, tp.V) < std::pair(tq.S, tq.V);
  });
  CastleOzmData sorted;
  sorted.n = out.n;
  for (auto k : idx) {
    sorted.castle.towers.push_back(out.castle.towers[k]);
    sorted.weights.push_back(out.weights[k]);
    sorted.phases.push_back(out.phases[k]);
  }
  return sorted;
}

/// Recovers castle data from a normalizer-preserving order zero map on a free
/// system. h_{i,g} is the u_{g^{-1}} coefficient of phi(e_1i); each point x of
/// supp phi(e_11) has exactly one g with h_{i,g}(x) != 0, giving s(x, i);
/// points with equal s-vectors form one tower and theta_i = phi(e_11) / h_i.
inline CastleOzmData decompose_ozm(const SystemRef& sys, const OrderZeroMap& phi) {
  if (!sys->is_free()) throw NotFree("decomposition requires a free action");
  if (phi.n == 0) throw NotOrderZero("matrix size must be positive");
  if (!verify_normalizer_preserving(phi)) throw NotNormalizerPreserving("some phi(e_ij) is not a normalizer");
  if (!verify_order_zero(phi)) throw NotOrderZero("phi fails the order zero relations");
  const auto& grp = sys->group();
  const std::size_t X = sys->num_points();
  const std::size_t n = phi.n;
  const Func d = cond_expectation(phi(0, 0));

  std::map<std::vector<std::size_t>, PointSet> towers;
  std::vector<std::vector<RadScalar>> h_at(X, std::vector<RadScalar>(n));
  for (auto x : open_support(d).points()) {
    std::vector<std::size_t> shape(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::size_t> found;
      for (std::size_t g = 0; g < grp.order(); ++g) {
        const auto& c = phi(0, i).coeff(grp.inv(g))[x];
        if (c.is_zero()) continue;
        if (found) throw NotOrderZero("phi(e_1" + std::to_string(i + 1) + ") has two nonzero coefficients at a point");
        found = g;
        h_at[x][i] = c;
      }
      if (!found) throw NotOrderZero("phi(e_1" + std::to_string(i + 1) + ") vanishes on supp phi(e_11)");
      shape[i] = *found;
    }
    towers[shape].insert(x);
  }

  CastleOzmData out;
  out.n = n;
  for (const auto& [shape, base] : towers) {
    out.castle.towers.push_back({base, shape});
    out.weights.push_back(d.restrict_to(base));
    std::vector<Func> theta(n, Func::zero(X));
    for (std::size_t i = 0; i < n; ++i)
      for (auto x : base.points()) theta[i][x] = d[x] / h_at[x][i];
    out.phases.push_back(std::move(theta));
  }
  out = canonical_ozm_data(*sys, out);
  try {
    validate_ozm_data(*sys, out);
  } catch (const InvalidCastleData& e) {
    throw NotOrderZero(std::string("recovered data is not a castle: ") + e.what());
  }
  if (!(assemble_castle_ozm(sys, out) == phi)) throw NotOrderZero("rebuilt castle map differs from phi");
  return out;
}

struct TzsInstance {
  std::size_t n = 0;
  Rational epsilon;
  std::vector<CrossedElement> F;
  Func h;
};

struct CommutatorMargins {
  double max_norm = 0.0;
  double bound = 0.0;   // n^2 * max_norm, valid for every contraction in M_n
  double margin = 0.0;  // epsilon - max_norm
  std::string status;   // "pass" (bound < eps), "fail" (max >= eps) or "inconclusive"
};

struct TzsReport {
  bool normalizers = false;                  // (i)
  std::optional<bool> remainder;             // (ii), evaluated only when (i) holds
  std::optional<Witness> remainder_witness;
  CommutatorMargins commutators;             // (iii)

  bool passed() const { return normalizers && remainder.value_or(false) && commutators.status == "pass"; }
};

/// (i) every phi(e_ij) normalizes C(X); (ii) 1 - phi(1) <= h; (iii) the
/// largest ||[a, phi(e_ij)]|| over a in F, reported with the n^2 bound.
inline TzsReport check_tzs_instance(const SystemRef& sys, const TzsInstance& inst, const OrderZeroMap& phi) {
  if (inst.epsilon <= 0) throw HypothesisViolated("epsilon must be positive");
  if (inst.h.is_zero() || !inst.h.is_positive()) throw HypothesisViolated("h must be a nonzero positive function");
  if (phi.n != inst.n) throw HypothesisViolated("map size differs from the instance size");
  TzsReport r;
  r.normalizers = verify_normalizer_preserving(phi);
  if (r.normalizers) {
    CrossedElement rest = CrossedElement::unit(sys) - phi.image_of_unit();
    if (!rest.in_subalgebra()) throw std::logic_error("1 - phi(1) outside C(X) for a normalizer-preserving map");
    auto sub = diag_subequivalent(*sys, DiagTuple({cond_expectation(rest)}), DiagTuple({inst.h}));
    r.remainder = sub.holds;
    r.remainder_witness = sub.witness;
  }
  double worst = 0.0;
  for (const auto& a : inst.F)
    for (const auto& img : phi.images) worst = std::max(worst, operator_norm(a * img - img * a).value);
  const double eps = inst.epsilon.get_d();
  const double n2 = static_cast<double>(inst.n * inst.n);
  r.commutators.max_norm = worst;
  r.commutators.bound = n2 * worst;
  r.commutators.margin = eps - worst;
  r.commutators.status = r.commutators.bound < eps ? "pass" : (worst >= eps ? "fail" : "inconclusive");
  return r;
}

struct TzsSearchResult {
  std::optional<OrderZeroMap> map;
  std::optional<CastleOzmData> data;
  std::uint64_t candidates = 0;
  bool exhausted = false;
};

/// Depth-first over points in index order. At each point x not yet used as a
/// level, first every tower with base {x} and shape (e, s_2, ..., s_n) on
/// unused levels (shapes in lexicographic order), then leaving x as a non-base.
/// Weights are indicators and phases are 1. Returns the first candidate that
/// passes check_tzs_instance; heuristic, not complete.
inline TzsSearchResult search_tzs_map(const SystemRef& sys, const TzsInstance& inst, std::uint64_t budget) {
  if (budget == 0) throw ResourceBound("search budget must be positive");
  if (inst.n == 0 || inst.n > sys->group_order()) throw HypothesisViolated("n must lie in 1..|G|");
  const std::size_t X = sys->num_points();
  const std::size_t G = sys->group_order();
  const std::size_t e = sys->group().identity();
  TzsSearchResult res;
  std::vector<Tower> chosen;
  PointSet used;
  bool stop = false;

  auto evaluate = [&]() {
    ++res.candidates;
    CastleOzmData d;
    d.n = inst.n;
    d.castle.towers = chosen;
    for (const auto& t : chosen) {
      d.weights.push_back(Func::indicator(X, t.V));
      d.phases.push_back(std::vector<Func>(inst.n, Func::constant(X, RadScalar(1))));
    }
    OrderZeroMap phi = build_castle_ozm(sys, d);
    if (check_tzs_instance(sys, inst, phi).passed()) {
      res.map = phi;
      res.data = d;
      stop = true;
    } else if (res.candidates >= budget) {
      stop = true;
    }
  };

  std::function<void(std::size_t)> visit = [&](std::size_t x) {
    if (stop) return;
    if (x == X) {
      evaluate();
      return;
    }
    if (!used.contains(x)) {
      // Shape tail s_2..s_n: distinct non-identity elements with fresh levels.
      std::vector<std::size_t> shape{e};
      std::function<void()> extend = [&]() {
        if (stop) return;
        if (shape.size() == inst.n) {
          PointSet levels;
          for (auto s : shape) levels.insert(sys->act(s, x));
          chosen.push_back({PointSet{x}, shape});
          PointSet before = used;
          used |= levels;
          visit(x + 1);
          used = before;
          chosen.pop_back();
          return;
        }
        for (std::size_t s = 0; s < G && !stop; ++s) {
          if (std::find(shape.begin(), shape.end(), s) != shape.end()) continue;
          std::size_t y = sys->act(s, x);
          if (used.contains(y)) continue;
          bool clash = false;
          for (auto t : shape) clash = clash || sys->act(t, x) == y;
          if (clash) continue;
          shape.push_back(s);
          extend();
          shape.pop_back();
        }
      };
      extend();
    }
    visit(x + 1);
  };
  visit(0);
  res.exhausted = !stop;
  return res;
}

/// One tower V = {x0}, S = G in index order, f = chi_{x0}, theta = 1. On a
/// free transitive system this is an isomorphism M_|G| -> C(X) x| G.
inline CastleOzmData orbit_castle_data(const DynSystem& sys, std::size_t x0) {
  CastleOzmData d;
  d.n = sys.group_order();
  std::vector<std::size_t> shape;
  for (std::size_t g = 0; g < sys.group_order(); ++g) shape.push_back(g);
  d.castle.towers.push_back({PointSet{x0}, shape});
  d.weights.push_back(Func::indicator(sys.num_points(), PointSet{x0}));
  d.phases.push_back(std::vector<Func>(d.n, Func::constant(sys.num_points(), RadScalar(1))));
  return d;
}

}  // namespace cartan
