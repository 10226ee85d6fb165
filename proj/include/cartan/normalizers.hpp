#pragma once

#include <string>
#include <vector>

#include "cartan/algebra.hpp"

// One-sided normalizers of C(X) inside C(X) x| G and of D_n (x) C(X) inside
// M_n (x) (C(X) x| G). Every characterization is available twice: the
// algebraic definition checked over the indicator basis, and the coefficient
// support criterion valid for free actions.
namespace cartan {

namespace detail {

template <class S>
BasicCrossed<S> point_indicator(const SystemRef& sys, std::size_t x) {
  PointSet p;
  p.insert(x);
  return BasicCrossed<S>::diagonal(sys, BasicFunc<S>::indicator(sys->num_points(), p));
}

inline void require_free(const DynSystem& sys, const char* what) {
  if (!sys.is_free()) throw NotFree(std::string(what) + " requires a free action");
}

}  // namespace detail

/// a^* C(X) a in C(X), checked on every point indicator.
template <class S>
bool is_r_normalizer(const BasicCrossed<S>& a) {
  const auto adj = a.adjoint();
  for (std::size_t x = 0; x < a.sys().num_points(); ++x)
    if (!(adj * detail::point_indicator<S>(a.system(), x) * a).in_subalgebra()) return false;
  return true;
}

template <class S>
bool is_s_normalizer(const BasicCrossed<S>& a) {
  return is_r_normalizer(a.adjoint());
}

template <class S>
bool is_normalizer(const BasicCrossed<S>& a) {
  return is_r_normalizer(a) && is_s_normalizer(a);
}

/// Free actions only: the open supports of the coefficients are pairwise
/// disjoint.
template <class S>
bool is_r_normalizer_by_support(const BasicCrossed<S>& a) {
  detail::require_free(a.sys(), "support criterion");
  PointSet seen;
  for (const auto& f : a.coeffs()) {
    PointSet s = open_support(f);
    if (!s.disjoint(seen)) return false;
    seen |= s;
  }
  return true;
}

/// Entrywise criterion: every entry is an r-normalizer and
/// x_ki^* chi_{y} x_kj = 0 for i != j, all k and all points y.
template <class S>
bool matrix_is_r_normalizer_entrywise(const BasicMatrix<S>& x) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!is_r_normalizer(x.at(i, j))) return false;
  const auto& sys = x.system();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (x.at(k, i).is_zero()) continue;
      const auto left = x.at(k, i).adjoint();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || x.at(k, j).is_zero()) continue;
        for (std::size_t y = 0; y < sys->num_points(); ++y)
          if (!(left * detail::point_indicator<S>(sys, y) * x.at(k, j)).is_zero()) return false;
      }
    }
  return true;
}

/// Free actions only: for each row i the supports of x_{i,j,g} over all
/// (j, g) are pairwise disjoint.
template <class S>
bool matrix_is_r_normalizer_by_support(const BasicMatrix<S>& x) {
  detail::require_free(*x.system(), "support criterion");
  for (std::size_t i = 0; i < x.size(); ++i) {
    PointSet seen;
    for (std::size_t j = 0; j < x.size(); ++j)
      for (const auto& f : x.at(i, j).coeffs()) {
        PointSet s = open_support(f);
        if (!s.disjoint(seen)) return false;
        seen |= s;
      }
  }
  return true;
}

/// The canonical image of x in C({0..n-1} x X) x| (Z/n x G):
///   y = sum_{i,j,g} (chi_{i} (x) x_{i,j,g}) u_{(i-j, g)}.
/// `product` must be product_with_cyclic(system, n).
template <class S>
BasicCrossed<S> to_product_element(const BasicMatrix<S>& x, const SystemRef& product) {
  const std::size_t n = x.size();
  const DynSystem& base = *x.system();
  const std::size_t G = base.group_order();
  const std::size_t X = base.num_points();
  if (product->group_order() != n * G || product->num_points() != n * X)
    throw SystemMismatch("product system has the wrong shape");
  BasicCrossed<S> y(product);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t c = (i + n - j) % n;
      for (std::size_t g = 0; g < G; ++g) {
        const auto& f = x.at(i, j).coeff(g);
        auto& dst = y.coeff(c * G + g);
        for (std::size_t p = 0; p < X; ++p) dst[i * X + p] = f[p];
      }
    }
  return y;
}

/// Reduction route: r-normalizer property of the image in the product system.
template <class S>
bool matrix_is_r_normalizer_by_reduction(const BasicMatrix<S>& x) {
  auto product = product_with_cyclic(*x.system(), x.size());
  return is_r_normalizer(to_product_element(x, product));
}

template <class S>
bool matrix_is_r_normalizer(const BasicMatrix<S>& x) {
  return matrix_is_r_normalizer_entrywise(x);
}

struct OrthogonalHypotheses {
  bool left = true;   // x_i^* x_j = 0 for i != j
  bool right = true;  // x_i x_j^* = 0 for i != j
};

template <class S>
struct OrthogonalSum {
  BasicCrossed<S> sum;
  bool r_certified = false;   // z^* D z in D
  bool s_certified = false;   // z D z^* in D
  bool normalizer = false;
};

/// Sum of normalizers under the requested orthogonality hypotheses; the
/// certified properties are re-verified by the algebraic predicates.
template <class S>
OrthogonalSum<S> orthogonal_sum(const std::vector<BasicCrossed<S>>& xs, OrthogonalHypotheses hyp = {}) {
  if (xs.empty()) throw HypothesisViolated("empty family");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!is_normalizer(xs[i])) throw HypothesisViolated("x_" + std::to_string(i + 1) + " is not a normalizer");
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      if (hyp.left && !(xs[i].adjoint() * xs[j]).is_zero())
        throw HypothesisViolated("x_" + std::to_string(i + 1) + "^* x_" + std::to_string(j + 1) + " != 0");
      if (hyp.right && !(xs[i] * xs[j].adjoint()).is_zero())
        throw HypothesisViolated("x_" + std::to_string(i + 1) + " x_" + std::to_string(j + 1) + "^* != 0");
    }
  OrthogonalSum<S> out{xs.front(), false, false, false};
  for (std::size_t i = 1; i < xs.size(); ++i) out.sum = out.sum + xs[i];
  out.r_certified = hyp.left || xs.size() == 1;
  out.s_certified = hyp.right || xs.size() == 1;
  if (out.r_certified && !is_r_normalizer(out.sum)) throw std::logic_error("orthogonal_sum: r-certificate failed");
  if (out.s_certified && !is_s_normalizer(out.sum)) throw std::logic_error("orthogonal_sum: s-certificate failed");
  out.normalizer = out.r_certified && out.s_certified;
  return out;
}

/// a^* a and a a^* both lie in C(X). For a normalizer this must hold, since
/// C(X) contains the unit; a violation is reported as a logic error.
template <class S>
bool check_square_in_subalgebra(const BasicCrossed<S>& a) {
  const auto adj = a.adjoint();
  bool inside = (adj * a).in_subalgebra() && (a * adj).in_subalgebra();
  if (!inside && is_normalizer(a)) throw std::logic_error("normalizer with a^*a or aa^* outside C(X)");
  return inside;
}

struct PreservationReport {
  bool preserving = false;               // every phi(e_ij) is a normalizer
  bool diagonal_in_subalgebra = false;   // every phi(e_ii) lies in C(X)
};

/// Normalizer preservation of a map on matrix units. For c.p.c. order zero
/// maps this is equivalent to phi(N(D_n)) in N(C(X)), and then phi(D_n) lies
/// in C(X).
template <class S>
PreservationReport check_normalizer_preserving(const BasicUnitMap<S>& phi) {
  PreservationReport r;
  r.preserving = true;
  for (const auto& img : phi.images)
    if (!is_normalizer(img)) {
      r.preserving = false;
      break;
    }
  r.diagonal_in_subalgebra = true;
  for (std::size_t i = 0; i < phi.n; ++i)
    if (!phi(i, i).in_subalgebra()) r.diagonal_in_subalgebra = false;
  return r;
}

}  // namespace cartan
