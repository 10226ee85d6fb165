#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cartan/algebra.hpp"
#include "cartan/representation.hpp"

namespace cartan {

/// One covering piece: U is moved by group element s into target slot k.
/// Target indices are 0-based.
struct WitnessPiece {
  PointSet U;
  std::size_t s = 0;
  std::size_t k = 0;
  friend bool operator==(const WitnessPiece&, const WitnessPiece&) = default;
};

/// rows[i] lists the pieces covering F_i.
struct Witness {
  std::vector<std::vector<WitnessPiece>> rows;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// diag(a_1, ..., a_n) with positive entries.
struct DiagTuple {
  std::vector<Func> entries;

  DiagTuple() = default;
  explicit DiagTuple(std::vector<Func> e) : entries(std::move(e)) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (!entries[i].is_positive()) throw NotPositive("tuple entry " + std::to_string(i) + " is not positive");
  }

  static DiagTuple indicators(std::size_t num_points, const std::vector<PointSet>& sets) {
    std::vector<Func> e;
    for (auto s : sets) e.push_back(Func::indicator(num_points, s));
    return DiagTuple(std::move(e));
  }

  std::size_t size() const { return entries.size(); }

  std::vector<PointSet> supports() const {
    std::vector<PointSet> out;
    for (const auto& f : entries) out.push_back(open_support(f));
    return out;
  }

  MatrixElement as_matrix(const SystemRef& sys) const { return MatrixElement::diagonal(sys, entries); }
};

namespace detail {

inline void check_sets(const DynSystem& sys, const std::vector<PointSet>& sets) {
  const PointSet all = sys.all_points();
  for (auto s : sets)
    if (!s.subset_of(all)) throw IndexOutOfRange("subset contains a point outside X");
}

}  // namespace detail

/// Cover condition F_i in union_j U_ij, and disjointness of the tagged images
/// s_ij U_ij x {k_ij} inside V_k x {k}. Missing trailing rows count as empty.
inline bool check_witness(const DynSystem& sys, const std::vector<PointSet>& F, const std::vector<PointSet>& V,
                          const Witness& w) {
  detail::check_sets(sys, F);
  detail::check_sets(sys, V);
  if (w.rows.size() > F.size()) throw IndexOutOfRange("witness has more rows than F");
  for (const auto& row : w.rows)
    for (const auto& p : row) {
      if (p.s >= sys.group_order()) throw IndexOutOfRange("witness group element out of range");
      if (p.k >= V.size()) throw IndexOutOfRange("witness target index out of range");
      if (!p.U.subset_of(sys.all_points())) throw IndexOutOfRange("witness set contains a point outside X");
    }
  std::vector<PointSet> used(V.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    PointSet cover;
    if (i < w.rows.size())
      for (const auto& p : w.rows[i]) {
        if (p.U.empty()) return false;
        cover |= p.U;
        PointSet image = sys.translate(p.s, p.U);
        if (!image.subset_of(V[p.k]) || !image.disjoint(used[p.k])) return false;
        used[p.k] |= image;
      }
    if (!F[i].subset_of(cover)) return false;
  }
  return true;
}

/// Lexicographically least per-point assignment witness for F < V, or none.
///
/// Source points (i, x) are visited in (i, x) order and each tries (s, k) in
/// lexicographic order. Every point reaches every point of its orbit, so a
/// partial assignment extends iff each orbit has no more unassigned sources
/// than free tagged targets; placing a point lowers both counts by one, which
/// keeps the bound once it holds at the root.
inline std::optional<Witness> search_subequivalence(const DynSystem& sys, const std::vector<PointSet>& F,
                                                    const std::vector<PointSet>& V) {
  detail::check_sets(sys, F);
  detail::check_sets(sys, V);
  const std::size_t G = sys.group_order();
  const std::size_t K = V.size();
  const std::size_t orbits = sys.orbits().size();

  struct Source {
    std::size_t row;
    std::size_t x;
  };
  std::vector<Source> sources;
  for (std::size_t i = 0; i < F.size(); ++i)
    for (auto x : F[i].points()) sources.push_back({i, x});

  std::vector<long> demand(orbits, 0);
  std::vector<long> capacity(orbits, 0);
  for (const auto& src : sources) ++demand[sys.orbit_index(src.x)];
  for (std::size_t k = 0; k < K; ++k)
    for (auto y : V[k].points()) ++capacity[sys.orbit_index(y)];
  for (std::size_t o = 0; o < orbits; ++o)
    if (demand[o] > capacity[o]) return std::nullopt;

  std::vector<PointSet> used(K);
  std::vector<std::pair<std::size_t, std::size_t>> choice(sources.size());

  // Iterative DFS; next[d] is the flattened (s, k) option to try at depth d.
  std::vector<std::size_t> next(sources.size() + 1, 0);
  std::size_t depth = 0;
  while (depth < sources.size()) {
    const auto& src = sources[depth];
    const std::size_t orbit = sys.orbit_index(src.x);
    bool placed = false;
    for (std::size_t opt = next[depth]; opt < G * K; ++opt) {
      std::size_t s = opt / K, k = opt % K;
      std::size_t y = sys.act(s, src.x);
      if (!V[k].contains(y) || used[k].contains(y)) continue;
      used[k].insert(y);
      choice[depth] = {s, k};
      next[depth] = opt + 1;
      --demand[orbit];
      --capacity[orbit];
      placed = true;
      break;
    }
    if (placed) {
      ++depth;
      if (depth < sources.size()) next[depth] = 0;
      continue;
    }
    if (depth == 0) return std::nullopt;
    --depth;
    const auto& prev = sources[depth];
    auto [s, k] = choice[depth];
    used[k].erase(sys.act(s, prev.x));
    ++demand[sys.orbit_index(prev.x)];
    ++capacity[sys.orbit_index(prev.x)];
  }

  Witness w;
  w.rows.resize(F.size());
  for (std::size_t d = 0; d < sources.size(); ++d) {
    auto [s, k] = choice[d];
    auto& row = w.rows[sources[d].row];
    auto it = std::find_if(row.begin(), row.end(), [&](const WitnessPiece& p) { return p.s == s && p.k == k; });
    if (it == row.end()) {
      row.push_back({PointSet{}, s, k});
      it = std::prev(row.end());
    }
    it->U.insert(sources[d].x);
  }
  for (auto& row : w.rows)
    std::sort(row.begin(), row.end(),
              [](const WitnessPiece& a, const WitnessPiece& b) { return std::pair(a.s, a.k) < std::pair(b.s, b.k); });
  return w;
}

struct SubequivalenceResult {
  bool holds = false;
  std::optional<Witness> witness;
};

/// a <= b. On finite X the maximal compact sets F_i = supp(a_i) decide it.
inline SubequivalenceResult diag_subequivalent(const DynSystem& sys, const DiagTuple& a, const DiagTuple& b) {
  auto w = search_subequivalence(sys, a.supports(), b.supports());
  return {w.has_value(), std::move(w)};
}

/// mu(supp f).
inline Rational d_tau(const Func& f, const InvariantMeasure& mu) {
  if (!f.is_positive()) throw NotPositive("d_tau of a function that is not positive");
  return mu(open_support(f));
}

struct ComparisonResult {
  bool holds = true;
  std::optional<std::pair<PointSet, PointSet>> counterexample;
  std::size_t pairs_checked = 0;  // pairs satisfying the measure hypothesis
};

/// Exhaustive over all (O, V) with mu(O) < mu(V) for every extreme measure.
/// `max_pairs` bounds the 4^|X| candidate pairs.
inline ComparisonResult dynamical_comparison_check(const DynSystem& sys, std::uint64_t max_pairs = 1ull << 26) {
  const std::size_t X = sys.num_points();
  if (2 * X >= 64 || (1ull << (2 * X)) > max_pairs) throw ResourceBound("too many subset pairs for exhaustive comparison");
  const auto measures = extreme_invariant_measures(sys);
  const std::uint64_t subsets = 1ull << X;
  ComparisonResult out;
  for (std::uint64_t o = 0; o < subsets; ++o)
    for (std::uint64_t v = 0; v < subsets; ++v) {
      PointSet O(o), Vs(v);
      bool strictly = std::all_of(measures.begin(), measures.end(), [&](const auto& mu) { return mu(O) < mu(Vs); });
      if (!strictly) continue;
      ++out.pairs_checked;
      if (!search_subequivalence(sys, {O}, {Vs})) {
        out.holds = false;
        out.counterexample = std::pair(O, Vs);
        return out;
      }
    }
  return out;
}

namespace detail {

/// Stacks the column representations of every entry of x at x0 into one
/// n|G| x n|G| matrix.
template <class S>
DenseMatrix<S> matrix_column_rep(const BasicMatrix<S>& x, std::size_t x0) {
  const std::size_t G = x.system()->group_order();
  const std::size_t n = x.size();
  DenseMatrix<S> m(n * G, n * G);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto block = column_rep(x.at(i, j), x0);
      for (std::size_t r = 0; r < G; ++r)
        for (std::size_t c = 0; c < G; ++c) m(i * G + r, j * G + c) = block(r, c);
    }
  return m;
}

inline std::vector<DenseMatrix<RadScalar>> positive_orbit_blocks(const MatrixElement& x, const char* name) {
  const DynSystem& sys = *x.system();
  if (!sys.is_free()) throw NotFree("Cuntz oracle requires a free action");
  std::vector<DenseMatrix<RadScalar>> blocks;
  for (std::size_t k = 0; k < sys.orbits().size(); ++k) {
    auto block = matrix_column_rep(x, sys.orbit_representative(k));
    if (!is_psd(to_eigen(block))) throw NotPositive(std::string(name) + " is not positive");
    blocks.push_back(std::move(block));
  }
  return blocks;
}

inline bool blockwise_rank_le(const std::vector<DenseMatrix<RadScalar>>& a, const std::vector<DenseMatrix<RadScalar>>& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (matrix_rank(a[k]) > matrix_rank(b[k])) return false;
  return true;
}

}  // namespace detail

/// Finite-dimensional Cuntz subequivalence: rank comparison in every orbit block.
inline bool cuntz_oracle(const MatrixElement& a, const MatrixElement& b) {
  if (!same_system(a.system(), b.system())) throw SystemMismatch("oracle inputs belong to different systems");
  return detail::blockwise_rank_le(detail::positive_orbit_blocks(a, "a"), detail::positive_orbit_blocks(b, "b"));
}

inline bool cuntz_oracle(const SystemRef& sys, const DiagTuple& a, const DiagTuple& b) {
  return cuntz_oracle(a.as_matrix(sys), b.as_matrix(sys));
}

inline bool cuntz_oracle(const CrossedElement& a, const CrossedElement& b) {
  MatrixElement ma(a.system(), 1), mb(b.system(), 1);
  ma.at(0, 0) = a;
  mb.at(0, 0) = b;
  return cuntz_oracle(ma, mb);
}

}  // namespace cartan
