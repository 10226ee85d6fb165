#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <cstddef>
#include <string>
#include <vector>

#include "cartan/algebra.hpp"

namespace cartan {

/// Row-major dense matrix over an arbitrary scalar.
template <class S>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<S> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, scalar_traits<S>::zero()) {}

  const S& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  S& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t k = 0; k < a.data.size(); ++k)
      if (!scalar_traits<S>::equal(a.data[k], b.data[k])) return false;
    return true;
  }
};

using FloatMatrix = Eigen::MatrixXcd;

template <class S>
FloatMatrix to_eigen(const DenseMatrix<S>& m) {
  FloatMatrix out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = scalar_traits<S>::to_complex(m(i, j));
  return out;
}

/// The representation on l^2(G x {x0}):  pi(f u_g) e_h = f((gh).x0) e_{gh}.
/// Basis vector e_h has index h.
template <class S>
DenseMatrix<S> column_rep(const BasicCrossed<S>& a, std::size_t x0) {
  const DynSystem& sys = a.sys();
  const auto& grp = sys.group();
  const std::size_t G = grp.order();
  DenseMatrix<S> m(G, G);
  for (std::size_t g = 0; g < G; ++g) {
    const auto& f = a.coeff(g);
    if (f.is_zero()) continue;
    for (std::size_t h = 0; h < G; ++h) {
      auto k = grp.mul(g, h);
      m(k, h) = f[sys.act(k, x0)];
    }
  }
  return m;
}

/// Regular representation on l^2(G x X), basis (h, x) at index x*|G| + h.
/// Block diagonal with one column_rep block per point.
template <class S>
DenseMatrix<S> regular_rep(const BasicCrossed<S>& a) {
  const std::size_t G = a.sys().group_order();
  const std::size_t X = a.sys().num_points();
  DenseMatrix<S> m(G * X, G * X);
  for (std::size_t x = 0; x < X; ++x) {
    auto block = column_rep(a, x);
    for (std::size_t i = 0; i < G; ++i)
      for (std::size_t j = 0; j < G; ++j) m(x * G + i, x * G + j) = block(i, j);
  }
  return m;
}

/// One |G| x |G| block per orbit, taken at the orbit's least point. For a free
/// orbit the block is the isomorphism C(orbit) x| G = M_|G|.
template <class S>
std::vector<DenseMatrix<S>> orbit_block_decomposition(const BasicCrossed<S>& a) {
  if (!a.sys().is_free()) throw NotFree("orbit blocks require a free action");
  std::vector<DenseMatrix<S>> blocks;
  for (std::size_t k = 0; k < a.sys().orbits().size(); ++k) blocks.push_back(column_rep(a, a.sys().orbit_representative(k)));
  return blocks;
}

/// Faithful float representation: direct sum of column representations at one
/// point per orbit (columns within an orbit are unitarily equivalent).
template <class S>
FloatMatrix faithful_rep(const BasicCrossed<S>& a) {
  const DynSystem& sys = a.sys();
  const auto G = static_cast<Eigen::Index>(sys.group_order());
  const auto K = static_cast<Eigen::Index>(sys.orbits().size());
  FloatMatrix m = FloatMatrix::Zero(G * K, G * K);
  for (Eigen::Index k = 0; k < K; ++k)
    m.block(k * G, k * G, G, G) = to_eigen(column_rep(a, sys.orbit_representative(static_cast<std::size_t>(k))));
  return m;
}

/// Faithful representation of M_n (x) (C(X) x| G): n x n blocks of faithful_rep.
template <class S>
FloatMatrix faithful_rep(const BasicMatrix<S>& x) {
  if (x.size() == 0) return FloatMatrix(0, 0);
  const auto d = faithful_rep(x.at(0, 0)).rows();
  const auto n = static_cast<Eigen::Index>(x.size());
  FloatMatrix m = FloatMatrix::Zero(n * d, n * d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m.block(i * d, j * d, d, d) = faithful_rep(x.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  return m;
}

inline double spectral_norm(const FloatMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<FloatMatrix> svd(m);
  return svd.singularValues()(0);
}

/// Smallest eigenvalue of the Hermitian part; +inf for an empty matrix.
inline double min_hermitian_eigenvalue(const FloatMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  FloatMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<FloatMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double hermitian_defect(const FloatMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Positive semidefinite within tolerance: Hermitian and eigenvalues >= -tol.
inline bool is_psd(const FloatMatrix& m, double tol = kDefaultTolerance) {
  return hermitian_defect(m) <= tol && min_hermitian_eigenvalue(m) >= -tol;
}

struct NormReport {
  double value = 0.0;
  double tolerance = kDefaultTolerance;
  std::string method;  // "zero", "diagonal" or "svd"
};

enum class NormMode { exact_first, float_only };

/// Operator norm of pi(a). Exact zero gives exactly 0; elements of C(X) use
/// the sup norm; everything else the largest singular value.
template <class S>
NormReport operator_norm(const BasicCrossed<S>& a, NormMode mode = NormMode::exact_first) {
  if (mode == NormMode::exact_first) {
    if (a.is_zero()) return {0.0, kDefaultTolerance, "zero"};
    if (a.in_subalgebra()) {
      double best = 0.0;
      const auto diag = cond_expectation(a);
      for (const auto& v : diag.values()) best = std::max(best, std::abs(scalar_traits<S>::to_complex(v)));
      return {best, kDefaultTolerance, "diagonal"};
    }
  }
  return {spectral_norm(faithful_rep(a)), kDefaultTolerance, "svd"};
}

template <class S>
NormReport operator_norm(const BasicMatrix<S>& x) {
  if (x.is_zero()) return {0.0, kDefaultTolerance, "zero"};
  return {spectral_norm(faithful_rep(x)), kDefaultTolerance, "svd"};
}

/// Exact rank by Gaussian elimination when every entry is a Gaussian
/// rational; otherwise float rank with singular values above tol.
inline std::size_t matrix_rank(const DenseMatrix<RadScalar>& m, double tol = kDefaultTolerance) {
  bool rational = std::all_of(m.data.begin(), m.data.end(), [](const RadScalar& s) { return s.is_rational_radical(); });
  if (!rational) {
    if (m.rows == 0 || m.cols == 0) return 0;
    Eigen::JacobiSVD<FloatMatrix> svd(to_eigen(m));
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
      if (svd.singularValues()(k) > tol) ++r;
    return r;
  }
  std::vector<std::vector<Gauss>> a(m.rows, std::vector<Gauss>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j).coeff();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[pivot], a[rank]);
    Gauss inv = a[rank][col].inverse();
    for (std::size_t i = rank + 1; i < m.rows; ++i) {
      if (a[i][col].is_zero()) continue;
      Gauss factor = a[i][col] * inv;
      for (std::size_t j = col; j < m.cols; ++j) a[i][j] = a[i][j] - factor * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t matrix_rank(const DenseMatrix<Complex>& m, double tol = kDefaultTolerance) {
  if (m.rows == 0 || m.cols == 0) return 0;
  Eigen::JacobiSVD<FloatMatrix> svd(to_eigen(m));
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > tol) ++r;
  return r;
}

}  // namespace cartan
