#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cartan/comparison.hpp"
#include "cartan/normalizers.hpp"

// Passage between combinatorial witnesses of a <= b and matrix r-normalizers
// t with t^*(b - delta)_+ t = (a - eps)_+.
namespace cartan {

struct CompiledWitness {
  MatrixElement t;
  Rational delta;
  Rational epsilon;
  std::vector<std::vector<Func>> h;  // h[i][j], squares sum to (a_i - eps)_+
  std::vector<Func> bhat;            // bhat[l]^2 (b_l - delta)_+ = 1 on the footprint
};

namespace detail {

inline Rational rational_value(const RadScalar& s, const char* what) {
  auto q = s.as_rational();
  if (!q) throw NotRepresentable(std::string(what) + " must be rational-valued");
  return *q;
}

inline std::vector<Func> padded(const DiagTuple& a, std::size_t n, std::size_t points) {
  std::vector<Func> out = a.entries;
  out.resize(n, Func::zero(points));
  return out;
}

inline MatrixElement sandwich(const MatrixElement& t, const std::vector<Func>& middle) {
  return t.adjoint() * MatrixElement::diagonal(t.system(), middle) * t;
}

}  // namespace detail

/// Builds t from a witness for supp((a - eps)_+) < supp(b).
///
/// The cover is disjointified first-piece-wins, delta is half the minimum of
/// b over the translated footprint, and t_{li} collects the pieces with
/// target l as bhat_l (h_ij o alpha_s^{-1}) u_s.
inline CompiledWitness compile(const SystemRef& sys, const DiagTuple& a, const DiagTuple& b, const Rational& eps,
                               const Witness& w) {
  if (eps <= 0) throw InvalidWitness("epsilon must be positive");
  const std::size_t X = sys->num_points();
  const std::size_t N = std::max(a.size(), b.size());
  for (const auto* tup : {&a, &b})
    for (const auto& f : tup->entries)
      for (const auto& v : f.values()) detail::rational_value(v, "tuple entries");

  std::vector<Func> cut(a.size());
  std::vector<PointSet> F(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    cut[i] = pos_cutdown(a.entries[i], eps);
    F[i] = open_support(cut[i]);
  }
  const auto V = b.supports();
  if (!check_witness(*sys, F, V, w)) throw InvalidWitness("witness does not certify supp((a-eps)_+) < supp(b)");

  CompiledWitness out;
  out.epsilon = eps;
  out.h.resize(a.size());

  struct Piece {
    std::size_t i, s, k;
    PointSet U;
  };
  std::vector<Piece> pieces;
  std::vector<PointSet> footprint(N);
  for (std::size_t i = 0; i < a.size() && i < w.rows.size(); ++i) {
    PointSet remaining = F[i];
    for (const auto& p : w.rows[i]) {
      PointSet own = p.U & remaining;
      remaining = remaining - own;
      Func hij = Func::zero(X);
      for (auto x : own.points()) hij[x] = RadScalar::sqrt_of(detail::rational_value(cut[i][x], "cutdown"));
      out.h[i].push_back(hij);
      if (own.empty()) continue;
      pieces.push_back({i, p.s, p.k, own});
      footprint[p.k] |= sys->translate(p.s, own);
    }
  }

  std::optional<Rational> min_b;
  for (std::size_t l = 0; l < b.size(); ++l)
    for (auto y : footprint[l].points()) {
      Rational v = detail::rational_value(b.entries[l][y], "b");
      if (!min_b || v < *min_b) min_b = v;
    }
  if (!min_b)
    for (const auto& f : b.entries)
      for (const auto& v : f.values()) {
        Rational q = detail::rational_value(v, "b");
        if (q > 0 && (!min_b || q < *min_b)) min_b = q;
      }
  out.delta = min_b ? Rational(*min_b / 2) : Rational(1);

  out.bhat.assign(N, Func::zero(X));
  for (std::size_t l = 0; l < b.size(); ++l)
    for (auto y : footprint[l].points()) {
      Rational gap = detail::rational_value(b.entries[l][y], "b") - out.delta;
      out.bhat[l][y] = RadScalar::sqrt_of(Rational(1 / gap));
    }

  out.t = MatrixElement::zero(sys, N);
  for (const auto& p : pieces) {
    Func moved = Func::zero(X);
    for (auto x : p.U.points()) {
      std::size_t y = sys->act(p.s, x);
      moved[y] = out.bhat[p.k][y] * RadScalar::sqrt_of(detail::rational_value(cut[p.i][x], "cutdown"));
    }
    auto& entry = out.t.at(p.k, p.i);
    entry = entry + CrossedElement::term(sys, moved, p.s);
  }

  std::vector<Func> bcut(N, Func::zero(X)), target(N, Func::zero(X));
  for (std::size_t l = 0; l < b.size(); ++l) bcut[l] = pos_cutdown(b.entries[l], out.delta);
  for (std::size_t i = 0; i < a.size(); ++i) target[i] = cut[i];
  if (!matrix_is_r_normalizer(out.t)) throw std::logic_error("compile: t is not an r-normalizer");
  if (!(detail::sandwich(out.t, bcut) == MatrixElement::diagonal(sys, target)))
    throw std::logic_error("compile: t^*(b-delta)_+ t != (a-eps)_+");
  return out;
}

/// Reads a witness back from an r-normalizer t satisfying the exact identity:
/// U = s^{-1} (supp t_{k,i,s} and supp b_k) for every nonzero (k, s).
inline Witness extract(const SystemRef& sys, const DiagTuple& a, const DiagTuple& b, const Rational& eps,
                       const Rational& delta, const MatrixElement& t) {
  const std::size_t X = sys->num_points();
  const std::size_t N = std::max(a.size(), b.size());
  if (t.size() != N) throw PreconditionFailed("t has size " + std::to_string(t.size()) + ", expected " + std::to_string(N));
  if (!same_system(t.system(), sys)) throw PreconditionFailed("t belongs to a different system");
  if (!matrix_is_r_normalizer(t)) throw PreconditionFailed("t is not a matrix r-normalizer");
  std::vector<Func> bcut(N, Func::zero(X)), target(N, Func::zero(X));
  for (std::size_t l = 0; l < b.size(); ++l) bcut[l] = pos_cutdown(b.entries[l], delta);
  for (std::size_t i = 0; i < a.size(); ++i) target[i] = pos_cutdown(a.entries[i], eps);
  bool identity = false;
  try {
    identity = detail::sandwich(t, bcut) == MatrixElement::diagonal(sys, target);
  } catch (const RadicalAdditionMismatch&) {
    identity = false;
  }
  if (!identity) throw PreconditionFailed("t^*(b-delta)_+ t != (a-eps)_+");

  const auto& grp = sys->group();
  const auto V = b.supports();
  Witness w;
  w.rows.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t s = 0; s < grp.order(); ++s)
      for (std::size_t k = 0; k < b.size(); ++k) {
        PointSet hit = open_support(t.at(k, i).coeff(s)) & V[k];
        if (hit.empty()) continue;
        w.rows[i].push_back({sys->translate(grp.inv(s), hit), s, k});
      }
  return w;
}

/// v = sum_i ((f h_i)^{1/2} o alpha_{s_i}^{-1}) u_{s_i}; the translated
/// supports must be pairwise disjoint.
inline CrossedElement single_row_rnormalizer(const SystemRef& sys, const Func& f, const std::vector<Func>& h,
                                             const std::vector<std::size_t>& s) {
  if (h.size() != s.size()) throw IndexOutOfRange("h and s must have the same length");
  const std::size_t X = sys->num_points();
  const auto& grp = sys->group();
  CrossedElement v = CrossedElement::zero(sys);
  PointSet seen;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (s[i] >= grp.order()) throw IndexOutOfRange("group element out of range");
    Func prod = f * h[i];
    if (!prod.is_positive()) throw NotPositive("f h_i is not positive");
    Func root = Func::zero(X);
    for (std::size_t x = 0; x < X; ++x) root[x] = prod[x].sqrt();
    Func moved = root.compose(*sys, grp.inv(s[i]));
    PointSet supp = open_support(moved);
    if (!supp.disjoint(seen)) throw SupportOverlap("translated support of term " + std::to_string(i + 1) + " overlaps");
    seen |= supp;
    v = v + CrossedElement::term(sys, moved, s[i]);
  }
  return v;
}

struct GridPoint {
  Rational epsilon;
  Rational delta;
  bool compiled = false;
  bool identity_exact = false;
  double approximation_error = 0.0;  // ||t'^* b t' - a||
  bool within_epsilon = false;
};

struct RefutationSearch {
  std::uint64_t candidates = 0;
  bool exhausted = false;
  bool found = false;
};

struct EquivalenceReport {
  bool subequivalent = false;               // (i)
  bool compiles_on_grid = false;            // (iii)
  bool approximates_on_grid = false;        // (ii), float surrogate
  std::vector<GridPoint> grid;
  std::optional<RefutationSearch> refutation;
  std::vector<std::string> inconsistencies;
  std::string surrogate_note = "(ii) checked on an epsilon grid with float norms";

  bool consistent() const { return inconsistencies.empty(); }
};

namespace detail {

/// Looks for t with 0/1 indicator coefficients, at most `max_terms` point
/// terms chi_{y} u_s per candidate, such that t is a matrix r-normalizer and
/// t^* b t lies in D_n (x) C(X) with support containing supp(a_i) on the
/// diagonal. Finding one would certify a <= b.
inline RefutationSearch bounded_rnormalizer_search(const SystemRef& sys, const DiagTuple& a, const DiagTuple& b,
                                                   std::uint64_t budget) {
  const std::size_t X = sys->num_points();
  const std::size_t G = sys->group_order();
  const std::size_t N = std::max(a.size(), b.size());
  const auto Fs = a.supports();
  std::size_t max_terms = 0;
  for (auto f : Fs) max_terms += f.size();
  const std::size_t cells = N * N * G * X;
  auto bpad = padded(b, N, X);

  RefutationSearch r;
  std::vector<std::size_t> pick;
  auto test = [&]() {
    ++r.candidates;
    MatrixElement t = MatrixElement::zero(sys, N);
    for (auto c : pick) {
      std::size_t y = c % X, s = (c / X) % G, col = (c / (X * G)) % N, row = c / (X * G * N);
      t.at(row, col).coeff(s)[y] = RadScalar(1);
    }
    if (!matrix_is_r_normalizer(t)) return false;
    auto m = sandwich(t, bpad);
    if (!m.in_subalgebra()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!Fs[i].subset_of(open_support(cond_expectation(m.at(i, i))))) return false;
    return true;
  };
  // Combinations of increasing size in lexicographic order.
  for (std::size_t k = 0; k <= std::min(max_terms, cells); ++k) {
    pick.resize(k);
    for (std::size_t q = 0; q < k; ++q) pick[q] = q;
    while (true) {
      if (r.candidates >= budget) return r;
      if (test()) {
        r.found = true;
        return r;
      }
      std::size_t q = k;
      while (q > 0 && pick[q - 1] == cells - k + q - 1) --q;
      if (q == 0) break;
      ++pick[q - 1];
      for (std::size_t p = q; p < k; ++p) pick[p] = pick[p - 1] + 1;
    }
  }
  r.exhausted = true;
  return r;
}

}  // namespace detail

/// Three-way consistency of (i) a <= b, (ii) approximate subequivalence and
/// (iii) exact compilation, on the grid eps in {m/2, m/4, m/8, m/16} with m the
/// least positive value of a. Requires a free system.
inline EquivalenceReport prop_equivalence_suite(const SystemRef& sys, const DiagTuple& a, const DiagTuple& b,
                                                std::uint64_t refutation_budget = 20000) {
  if (!sys->is_free()) throw NotFree("equivalence suite requires a free action");
  EquivalenceReport rep;
  const std::size_t X = sys->num_points();
  const std::size_t N = std::max(a.size(), b.size());
  auto sub = diag_subequivalent(*sys, a, b);
  rep.subequivalent = sub.holds;

  std::optional<Rational> m;
  for (const auto& f : a.entries)
    for (const auto& v : f.values()) {
      Rational q = detail::rational_value(v, "a");
      if (q > 0 && (!m || q < *m)) m = q;
    }
  const Rational base = m.value_or(Rational(1));

  if (!sub.holds) {
    rep.refutation = detail::bounded_rnormalizer_search(sys, a, b, refutation_budget);
    if (rep.refutation->found) rep.inconsistencies.push_back("bounded search found an r-normalizer for a non-subequivalent pair");
    return rep;
  }

  auto apad = detail::padded(a, N, X);
  auto bpad = detail::padded(b, N, X);
  rep.compiles_on_grid = true;
  rep.approximates_on_grid = true;
  for (int d = 2; d <= 16; d *= 2) {
    GridPoint gp;
    gp.epsilon = base / d;
    gp.epsilon.canonicalize();
    try {
      auto cw = compile(sys, a, b, gp.epsilon, *sub.witness);
      gp.compiled = true;
      gp.identity_exact = true;
      gp.delta = cw.delta;
      // t' = diag(sqrt((b - delta)_+ / b)) t, so t'^* b t' = (a - eps)_+.
      std::vector<Func> scale(N, Func::zero(X));
      for (std::size_t l = 0; l < N; ++l)
        for (std::size_t y = 0; y < X; ++y) {
          Rational bv = detail::rational_value(bpad[l][y], "b");
          if (bv > 0) scale[l][y] = RadScalar::sqrt_of(Rational(pos_cutdown(bpad[l], cw.delta)[y].as_rational().value() / bv));
        }
      MatrixElement tp = MatrixElement::diagonal(sys, scale) * cw.t;
      auto diff = to_float(detail::sandwich(tp, bpad)) - to_float(MatrixElement::diagonal(sys, apad));
      gp.approximation_error = operator_norm(diff).value;
      gp.within_epsilon = gp.approximation_error <= gp.epsilon.get_d() + kDefaultTolerance;
    } catch (const std::exception&) {
      gp.compiled = false;
    }
    rep.compiles_on_grid = rep.compiles_on_grid && gp.compiled;
    rep.approximates_on_grid = rep.approximates_on_grid && gp.within_epsilon;
    rep.grid.push_back(gp);
  }
  if (!rep.compiles_on_grid) rep.inconsistencies.push_back("(i) holds but compile failed on the grid");
  if (!rep.approximates_on_grid) rep.inconsistencies.push_back("(i) holds but ||t^*bt - a|| exceeded epsilon on the grid");
  return rep;
}

}  // namespace cartan
