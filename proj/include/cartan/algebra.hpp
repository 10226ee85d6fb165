#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cartan/dynsys.hpp"
#include "cartan/errors.hpp"
#include "cartan/point_set.hpp"
#include "cartan/scalar_traits.hpp"

namespace cartan {

/// An element of C(X): one scalar per point.
template <class S>
class BasicFunc {
public:
  using scalar_type = S;
  using traits = scalar_traits<S>;

  BasicFunc() = default;
  explicit BasicFunc(std::size_t n) : values_(n, traits::zero()) {}
  explicit BasicFunc(std::vector<S> values) : values_(std::move(values)) {}

  static BasicFunc zero(std::size_t n) { return BasicFunc(n); }
  static BasicFunc constant(std::size_t n, const S& c) { return BasicFunc(std::vector<S>(n, c)); }
  static BasicFunc indicator(std::size_t n, PointSet s, const S& value = traits::one()) {
    BasicFunc f(n);
    for (auto x : s.points()) f.values_.at(x) = value;
    return f;
  }

  std::size_t size() const { return values_.size(); }
  const S& operator[](std::size_t x) const { return values_[x]; }
  S& operator[](std::size_t x) { return values_[x]; }
  const std::vector<S>& values() const { return values_; }

  bool is_zero() const {
    for (const auto& v : values_)
      if (!traits::is_zero(v)) return false;
    return true;
  }

  /// Real and nonnegative at every point.
  bool is_positive() const {
    for (const auto& v : values_)
      if (!traits::is_real_nonneg(v)) return false;
    return true;
  }

  BasicFunc conj() const {
    BasicFunc out(size());
    for (std::size_t x = 0; x < size(); ++x) out.values_[x] = traits::conj(values_[x]);
    return out;
  }

  /// x -> f(h.x)
  BasicFunc compose(const DynSystem& sys, std::size_t h) const {
    BasicFunc out(size());
    for (std::size_t x = 0; x < size(); ++x) out.values_[x] = values_[sys.act(h, x)];
    return out;
  }

  BasicFunc restrict_to(PointSet s) const {
    BasicFunc out(size());
    for (auto x : s.points()) out.values_[x] = values_[x];
    return out;
  }

  friend BasicFunc operator+(const BasicFunc& a, const BasicFunc& b) {
    check_sizes(a, b);
    BasicFunc out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out.values_[x] = a.values_[x] + b.values_[x];
    return out;
  }
  friend BasicFunc operator-(const BasicFunc& a, const BasicFunc& b) {
    check_sizes(a, b);
    BasicFunc out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out.values_[x] = a.values_[x] - b.values_[x];
    return out;
  }
  friend BasicFunc operator*(const BasicFunc& a, const BasicFunc& b) {
    check_sizes(a, b);
    BasicFunc out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out.values_[x] = a.values_[x] * b.values_[x];
    return out;
  }
  friend BasicFunc operator*(const S& c, const BasicFunc& a) {
    BasicFunc out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out.values_[x] = c * a.values_[x];
    return out;
  }

  friend bool operator==(const BasicFunc& a, const BasicFunc& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t x = 0; x < a.size(); ++x)
      if (!traits::equal(a.values_[x], b.values_[x])) return false;
    return true;
  }

private:
  static void check_sizes(const BasicFunc& a, const BasicFunc& b) {
    if (a.size() != b.size()) throw SystemMismatch("functions live on different point sets");
  }

  std::vector<S> values_;
};

/// Points where f is nonzero (exact test for exact scalars).
template <class S>
PointSet open_support(const BasicFunc<S>& f) {
  PointSet s;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!scalar_traits<S>::is_zero(f[x])) s.insert(x);
  return s;
}

/// Pointwise (f - eps)_+ of a positive function.
template <class S>
BasicFunc<S> pos_cutdown(const BasicFunc<S>& f, const Rational& eps) {
  if (!f.is_positive()) throw NotPositive("cutdown of a function that is not positive");
  BasicFunc<S> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = scalar_traits<S>::cutdown(f[x], eps);
  return out;
}

/// A finite sum  sum_g a_g u_g  in C(X) x| G, with the covariance relation
/// u_g f u_g^* = f o alpha_{g^{-1}}.
template <class S>
class BasicCrossed {
public:
  using scalar_type = S;
  using func_type = BasicFunc<S>;
  using traits = scalar_traits<S>;

  BasicCrossed() = default;
  explicit BasicCrossed(SystemRef sys)
      : sys_(std::move(sys)), coeffs_(sys_->group_order(), func_type(sys_->num_points())) {}

  static BasicCrossed zero(SystemRef sys) { return BasicCrossed(std::move(sys)); }
  static BasicCrossed unit(SystemRef sys) {
    BasicCrossed a(sys);
    a.coeffs_[sys->group().identity()] = func_type::constant(sys->num_points(), traits::one());
    return a;
  }
  /// u_g
  static BasicCrossed u(SystemRef sys, std::size_t g) {
    BasicCrossed a(sys);
    a.coeffs_.at(g) = func_type::constant(sys->num_points(), traits::one());
    return a;
  }
  /// f u_g
  static BasicCrossed term(SystemRef sys, func_type f, std::size_t g) {
    BasicCrossed a(sys);
    if (f.size() != sys->num_points()) throw SystemMismatch("function size does not match the system");
    a.coeffs_.at(g) = std::move(f);
    return a;
  }
  /// f u_e
  static BasicCrossed diagonal(SystemRef sys, func_type f) {
    auto e = sys->group().identity();
    return term(std::move(sys), std::move(f), e);
  }

  const SystemRef& system() const { return sys_; }
  const DynSystem& sys() const { return *sys_; }
  const func_type& coeff(std::size_t g) const { return coeffs_[g]; }
  func_type& coeff(std::size_t g) { return coeffs_[g]; }
  const std::vector<func_type>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& f : coeffs_)
      if (!f.is_zero()) return false;
    return true;
  }

  /// Membership in C(X): every non-identity coefficient vanishes.
  bool in_subalgebra() const {
    auto e = sys_->group().identity();
    for (std::size_t g = 0; g < coeffs_.size(); ++g)
      if (g != e && !coeffs_[g].is_zero()) return false;
    return true;
  }

  /// (a*)_g = conj(a_{g^{-1}}) o alpha_{g^{-1}}
  BasicCrossed adjoint() const {
    BasicCrossed out(sys_);
    const auto& grp = sys_->group();
    for (std::size_t g = 0; g < coeffs_.size(); ++g) {
      auto gi = grp.inv(g);
      out.coeffs_[g] = coeffs_[gi].conj().compose(*sys_, gi);
    }
    return out;
  }

  friend BasicCrossed operator+(const BasicCrossed& a, const BasicCrossed& b) {
    check_same(a, b);
    BasicCrossed out(a.sys_);
    for (std::size_t g = 0; g < a.coeffs_.size(); ++g) out.coeffs_[g] = a.coeffs_[g] + b.coeffs_[g];
    return out;
  }
  friend BasicCrossed operator-(const BasicCrossed& a, const BasicCrossed& b) {
    check_same(a, b);
    BasicCrossed out(a.sys_);
    for (std::size_t g = 0; g < a.coeffs_.size(); ++g) out.coeffs_[g] = a.coeffs_[g] - b.coeffs_[g];
    return out;
  }
  friend BasicCrossed operator*(const S& c, const BasicCrossed& a) {
    BasicCrossed out(a.sys_);
    for (std::size_t g = 0; g < a.coeffs_.size(); ++g) out.coeffs_[g] = c * a.coeffs_[g];
    return out;
  }

  /// (ab)_k(x) = sum_g a_g(x) b_{g^{-1}k}(g^{-1}.x)
  friend BasicCrossed operator*(const BasicCrossed& a, const BasicCrossed& b) {
    check_same(a, b);
    const DynSystem& sys = *a.sys_;
    const auto& grp = sys.group();
    const std::size_t G = grp.order();
    const std::size_t X = sys.num_points();
    BasicCrossed out(a.sys_);
    for (std::size_t g = 0; g < G; ++g) {
      const auto& ag = a.coeffs_[g];
      if (ag.is_zero()) continue;
      const auto gi = grp.inv(g);
      for (std::size_t k = 0; k < G; ++k) {
        const auto& bh = b.coeffs_[grp.mul(gi, k)];
        auto& dst = out.coeffs_[k];
        for (std::size_t x = 0; x < X; ++x) {
          if (traits::is_zero(ag[x])) continue;
          const auto& bv = bh[sys.act(gi, x)];
          if (traits::is_zero(bv)) continue;
          dst[x] += ag[x] * bv;
        }
      }
    }
    return out;
  }

  friend bool operator==(const BasicCrossed& a, const BasicCrossed& b) {
    return same_system(a.sys_, b.sys_) && a.coeffs_ == b.coeffs_;
  }

private:
  static void check_same(const BasicCrossed& a, const BasicCrossed& b) {
    if (!same_system(a.sys_, b.sys_)) throw SystemMismatch("elements belong to different systems");
  }

  SystemRef sys_;
  std::vector<func_type> coeffs_;
};

template <class S>
BasicCrossed<S> adjoint(const BasicCrossed<S>& a) {
  return a.adjoint();
}

/// E(a) = a_e.
template <class S>
BasicFunc<S> cond_expectation(const BasicCrossed<S>& a) {
  return a.coeff(a.sys().group().identity());
}

/// n x n matrix over the crossed product; the distinguished subalgebra is
/// D_n (x) C(X), diagonal matrices with entries in C(X).
template <class S>
class BasicMatrix {
public:
  using element_type = BasicCrossed<S>;
  using func_type = BasicFunc<S>;

  BasicMatrix() = default;
  BasicMatrix(SystemRef sys, std::size_t n) : sys_(sys), n_(n), entries_(n * n, element_type::zero(sys)) {}

  static BasicMatrix zero(SystemRef sys, std::size_t n) { return BasicMatrix(std::move(sys), n); }
  static BasicMatrix diagonal(SystemRef sys, const std::vector<func_type>& entries) {
    BasicMatrix m(sys, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = element_type::diagonal(sys, entries[i]);
    return m;
  }

  std::size_t size() const { return n_; }
  const SystemRef& system() const { return sys_; }
  const element_type& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  element_type& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  BasicMatrix adjoint() const {
    BasicMatrix out(sys_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out.at(j, i) = at(i, j).adjoint();
    return out;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Membership in D_n (x) C(X).
  bool in_subalgebra() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& e = at(i, j);
        if (i == j ? !e.in_subalgebra() : !e.is_zero()) return false;
      }
    return true;
  }

  friend BasicMatrix operator+(const BasicMatrix& a, const BasicMatrix& b) {
    check_same(a, b);
    BasicMatrix out(a.sys_, a.n_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
  }
  friend BasicMatrix operator-(const BasicMatrix& a, const BasicMatrix& b) {
    check_same(a, b);
    BasicMatrix out(a.sys_, a.n_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
    return out;
  }
  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    check_same(a, b);
    BasicMatrix out(a.sys_, a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j)
        for (std::size_t k = 0; k < a.n_; ++k) {
          const auto& l = a.at(i, k);
          const auto& r = b.at(k, j);
          if (l.is_zero() || r.is_zero()) continue;
          out.at(i, j) = out.at(i, j) + l * r;
        }
    return out;
  }
  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.n_ == b.n_ && same_system(a.sys_, b.sys_) && a.entries_ == b.entries_;
  }

private:
  static void check_same(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.n_ != b.n_) throw SystemMismatch("matrix sizes differ");
    if (!same_system(a.sys_, b.sys_)) throw SystemMismatch("matrices belong to different systems");
  }

  SystemRef sys_;
  std::size_t n_ = 0;
  std::vector<element_type> entries_;
};

/// Linear map M_n -> C(X) x| G given by its values on matrix units e_ij.
template <class S>
struct BasicUnitMap {
  SystemRef sys;
  std::size_t n = 0;
  std::vector<BasicCrossed<S>> images;  // images[i*n + j] = phi(e_ij)

  BasicUnitMap() = default;
  BasicUnitMap(SystemRef s, std::size_t size)
      : sys(s), n(size), images(size * size, BasicCrossed<S>::zero(s)) {}

  const BasicCrossed<S>& operator()(std::size_t i, std::size_t j) const { return images[i * n + j]; }
  BasicCrossed<S>& operator()(std::size_t i, std::size_t j) { return images[i * n + j]; }

  /// phi(x) for a scalar matrix x (row-major, n*n entries).
  BasicCrossed<S> apply(const std::vector<S>& x) const {
    BasicCrossed<S> out = BasicCrossed<S>::zero(sys);
    for (std::size_t k = 0; k < n * n; ++k)
      if (!scalar_traits<S>::is_zero(x[k])) out = out + x[k] * images[k];
    return out;
  }

  BasicCrossed<S> image_of_unit() const {
    BasicCrossed<S> out = BasicCrossed<S>::zero(sys);
    for (std::size_t i = 0; i < n; ++i) out = out + (*this)(i, i);
    return out;
  }

  friend bool operator==(const BasicUnitMap& a, const BasicUnitMap& b) {
    return a.n == b.n && a.images == b.images;
  }
};

using Func = BasicFunc<RadScalar>;
using CrossedElement = BasicCrossed<RadScalar>;
using MatrixElement = BasicMatrix<RadScalar>;
using UnitMap = BasicUnitMap<RadScalar>;

using FuncF = BasicFunc<Complex>;
using CrossedElementF = BasicCrossed<Complex>;
using MatrixElementF = BasicMatrix<Complex>;

inline RadScalar rad_add(const RadScalar& a, const RadScalar& b) { return a + b; }

template <class S>
BasicFunc<Complex> to_float(const BasicFunc<S>& f) {
  std::vector<Complex> v;
  v.reserve(f.size());
  for (const auto& s : f.values()) v.push_back(scalar_traits<S>::to_complex(s));
  return BasicFunc<Complex>(std::move(v));
}

template <class S>
BasicCrossed<Complex> to_float(const BasicCrossed<S>& a) {
  BasicCrossed<Complex> out(a.system());
  for (std::size_t g = 0; g < a.coeffs().size(); ++g) out.coeff(g) = to_float(a.coeff(g));
  return out;
}

template <class S>
BasicMatrix<Complex> to_float(const BasicMatrix<S>& m) {
  BasicMatrix<Complex> out(m.system(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.at(i, j) = to_float(m.at(i, j));
  return out;
}

}  // namespace cartan
