#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "cartan/rad_scalar.hpp"

namespace cartan {

/// Absolute tolerance for every floating-point check (norms, eigenvalues,
/// float-mode zero tests).
inline constexpr double kDefaultTolerance = 1e-9;

using Complex = std::complex<double>;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<RadScalar> {
  static constexpr bool exact = true;
  static RadScalar zero() { return RadScalar(); }
  static RadScalar one() { return RadScalar(1); }
  static RadScalar from_rational(const Rational& q) { return RadScalar(q); }
  static RadScalar from_scalar(const RadScalar& s) { return s; }
  static bool is_zero(const RadScalar& s) { return s.is_zero(); }
  static bool equal(const RadScalar& a, const RadScalar& b) { return a == b; }
  static RadScalar conj(const RadScalar& s) { return s.conj(); }
  static Complex to_complex(const RadScalar& s) { return s.to_complex(); }
  static bool is_real_nonneg(const RadScalar& s) { return s.is_real_nonneg(); }
  static RadScalar cutdown(const RadScalar& s, const Rational& eps) { return s.cutdown(eps); }
  static RadScalar sqrt(const RadScalar& s) { return s.sqrt(); }
  static std::string str(const RadScalar& s) { return s.str(); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex from_scalar(const RadScalar& s) { return s.to_complex(); }
  static bool is_zero(const Complex& s) { return std::abs(s) <= kDefaultTolerance; }
  static bool equal(const Complex& a, const Complex& b) { return std::abs(a - b) <= kDefaultTolerance; }
  static Complex conj(const Complex& s) { return std::conj(s); }
  static Complex to_complex(const Complex& s) { return s; }
  static bool is_real_nonneg(const Complex& s) {
    return std::abs(s.imag()) <= kDefaultTolerance && s.real() >= -kDefaultTolerance;
  }
  static Complex cutdown(const Complex& s, const Rational& eps) {
    if (!is_real_nonneg(s)) throw NotPositive("cutdown of non-positive scalar");
    return {std::max(s.real() - eps.get_d(), 0.0), 0.0};
  }
  static Complex sqrt(const Complex& s) { return {std::sqrt(std::max(s.real(), 0.0)), 0.0}; }
  static std::string str(const Complex& s) {
    return std::to_string(s.real()) + (s.imag() < 0 ? "" : "+") + std::to_string(s.imag()) + " i";
  }
};

}  // namespace cartan
