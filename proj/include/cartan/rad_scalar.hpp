#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "cartan/errors.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Gaussian rational re + im*i.
struct Gauss {
  Rational re{0};
  Rational im{0};

  Gauss() = default;
  Gauss(Rational r) : re(std::move(r)) {}
  Gauss(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  Gauss(long r) : re(r) {}

  static Gauss i() { return Gauss(0, 1); }

  bool is_zero() const { return re == 0 && im == 0; }
  Gauss conj() const { return Gauss(re, -im); }
  Rational norm_sq() const { return re * re + im * im; }

  Gauss inverse() const {
    Rational n = norm_sq();
    if (n == 0) throw std::domain_error("Gauss::inverse of zero");
    return Gauss(re / n, -im / n);
  }

  friend Gauss operator+(const Gauss& a, const Gauss& b) { return Gauss(a.re + b.re, a.im + b.im); }
  friend Gauss operator-(const Gauss& a, const Gauss& b) { return Gauss(a.re - b.re, a.im - b.im); }
  friend Gauss operator-(const Gauss& a) { return Gauss(-a.re, -a.im); }
  friend Gauss operator*(const Gauss& a, const Gauss& b) {
    return Gauss(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Gauss operator/(const Gauss& a, const Gauss& b) { return a * b.inverse(); }
  friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
};

/// Exact scalar coeff * sqrt(radicand): a Gaussian rational times the square
/// root of a square-free positive integer. Zero always carries radicand 1.
///
/// Sums are only defined between like radicals (or with zero); anything else
/// raises RadicalAdditionMismatch, which callers treat as leaving the exact
/// fragment.
class RadScalar {
public:
  RadScalar() = default;
  RadScalar(long v) : coeff_(v) {}
  RadScalar(const Rational& q) : coeff_(q) {}
  RadScalar(const Gauss& g) : coeff_(g) { normalize_zero(); }

  /// coeff * sqrt(radicand) for any positive rational radicand.
  RadScalar(const Gauss& coeff, const Rational& radicand) {
    if (radicand <= 0) throw std::domain_error("RadScalar radicand must be positive");
    // sqrt(p/q) = sqrt(p*q) / q
    Integer pq = radicand.get_num() * radicand.get_den();
    auto [root, free_part] = split_square(pq);
    Rational scale(root, radicand.get_den());
    scale.canonicalize();
    coeff_ = coeff * Gauss(scale);
    radicand_ = free_part;
    normalize_zero();
  }

  static RadScalar sqrt_of(const Rational& q) {
    if (q < 0) throw NotPositive("square root of negative rational " + to_string(q));
    if (q == 0) return RadScalar();
    return RadScalar(Gauss(1), q);
  }

  const Gauss& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }

  bool is_zero() const { return coeff_.is_zero(); }
  bool is_rational_radical() const { return radicand_ == 1; }
  bool is_real() const { return coeff_.im == 0; }
  bool is_real_nonneg() const { return coeff_.im == 0 && coeff_.re >= 0; }

  std::optional<Rational> as_rational() const {
    if (radicand_ == 1 && coeff_.im == 0) return coeff_.re;
    return std::nullopt;
  }

  RadScalar conj() const {
    RadScalar r = *this;
    r.coeff_ = coeff_.conj();
    return r;
  }

  /// |z|^2, always rational.
  Rational abs_sq() const { return coeff_.norm_sq() * Rational(radicand_); }

  std::complex<double> to_complex() const {
    double s = std::sqrt(radicand_.get_d());
    return {coeff_.re.get_d() * s, coeff_.im.get_d() * s};
  }

  RadScalar inverse() const {
    if (is_zero()) throw std::domain_error("RadScalar::inverse of zero");
    // 1/(c sqrt r) = (1/(c r)) sqrt r
    RadScalar out;
    out.coeff_ = (coeff_ * Gauss(Rational(radicand_))).inverse();
    out.radicand_ = radicand_;
    return out;
  }

  /// Square root of a nonnegative rational value.
  RadScalar sqrt() const {
    auto q = as_rational();
    if (!q) throw NotRepresentable("square root of non-rational scalar " + str());
    return sqrt_of(*q);
  }

  friend RadScalar operator+(const RadScalar& a, const RadScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.radicand_ != b.radicand_)
      throw RadicalAdditionMismatch("cannot add " + a.str() + " and " + b.str());
    RadScalar out;
    out.coeff_ = a.coeff_ + b.coeff_;
    out.radicand_ = a.radicand_;
    out.normalize_zero();
    return out;
  }
  friend RadScalar operator-(const RadScalar& a) {
    RadScalar out = a;
    out.coeff_ = -a.coeff_;
    return out;
  }
  friend RadScalar operator-(const RadScalar& a, const RadScalar& b) { return a + (-b); }

  friend RadScalar operator*(const RadScalar& a, const RadScalar& b) {
    if (a.is_zero() || b.is_zero()) return RadScalar();
    // both radicands square-free: r1 r2 = g^2 (r1/g)(r2/g), coprime square-free factors
    RadScalar out;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.radicand_.get_mpz_t(), b.radicand_.get_mpz_t());
    out.coeff_ = a.coeff_ * b.coeff_ * Gauss(Rational(g));
    out.radicand_ = (a.radicand_ / g) * (b.radicand_ / g);
    return out;
  }
  friend RadScalar operator/(const RadScalar& a, const RadScalar& b) { return a * b.inverse(); }

  RadScalar& operator+=(const RadScalar& b) { return *this = *this + b; }
  RadScalar& operator-=(const RadScalar& b) { return *this = *this - b; }
  RadScalar& operator*=(const RadScalar& b) { return *this = *this * b; }

  friend bool operator==(const RadScalar& a, const RadScalar& b) {
    return a.coeff_ == b.coeff_ && a.radicand_ == b.radicand_;
  }

  /// max(value - eps, 0) for a real nonnegative value.
  RadScalar cutdown(const Rational& eps) const {
    if (!is_real_nonneg()) throw NotPositive("cutdown of non-positive scalar " + str());
    if (radicand_ == 1) {
      Rational v = coeff_.re - eps;
      return v > 0 ? RadScalar(v) : RadScalar();
    }
    // c sqrt r <= eps  <=>  c^2 r <= eps^2
    if (eps <= 0) return *this;
    if (coeff_.re * coeff_.re * Rational(radicand_) <= eps * eps) return RadScalar();
    throw RadicalAdditionMismatch("cutdown " + str() + " - " + to_string(eps) + " is not a single radical");
  }

  std::string str() const {
    std::string g;
    const Rational& re = coeff_.re;
    const Rational& im = coeff_.im;
    bool both = re != 0 && im != 0;
    if (im == 0) {
      g = re.get_str();
    } else if (re == 0) {
      g = im.get_str() + " i";
    } else {
      g = re.get_str() + (im > 0 ? "+" : "-") + Rational(abs(im)).get_str() + " i";
    }
    if (radicand_ == 1) return g;
    if (both) g = "(" + g + ")";
    return g + " sqrt " + radicand_.get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const RadScalar& s) { return os << s.str(); }

private:
  void normalize_zero() {
    if (coeff_.is_zero()) radicand_ = 1;
  }

  Gauss coeff_{};
  Integer radicand_{1};
};

namespace detail {

class ScalarLexer {
public:
  explicit ScalarLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::optional<Rational> rational() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    if (start == pos_) return std::nullopt;
    return parse_rational(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("scalar '" + std::string(s_) + "': " + msg);
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// term := [sign] [rational] ["i"]
inline bool parse_term(ScalarLexer& lx, Gauss& out, bool require_sign) {
  int sign = 1;
  if (lx.accept("+")) {
  } else if (lx.accept("-")) {
    sign = -1;
  } else if (require_sign) {
    return false;
  }
  auto q = lx.rational();
  bool imag = lx.accept("i");
  if (!q && !imag) lx.fail("expected a number");
  Rational v = q.value_or(Rational(1)) * sign;
  out = imag ? out + Gauss(0, v) : out + Gauss(v);
  return true;
}

inline Gauss parse_gauss(ScalarLexer& lx) {
  Gauss g;
  parse_term(lx, g, false);
  char c = lx.peek();
  if (c == '+' || c == '-') parse_term(lx, g, true);
  return g;
}

}  // namespace detail

/// Literal grammar: "p/q", "p/q i", "a/b+c/d i", each optionally followed by
/// "sqrt r/s"; a compound coefficient may be parenthesised.
inline RadScalar parse_scalar(std::string_view text) {
  detail::ScalarLexer lx(text);
  Gauss g;
  if (lx.accept("(")) {
    g = detail::parse_gauss(lx);
    if (!lx.accept(")")) lx.fail("missing ')'");
  } else if (lx.peek() == 's') {
    g = Gauss(1);
  } else {
    g = detail::parse_gauss(lx);
  }
  RadScalar out(g);
  if (lx.accept("sqrt")) {
    auto r = lx.rational();
    if (!r) lx.fail("expected radicand after sqrt");
    if (*r <= 0) lx.fail("radicand must be positive");
    out = RadScalar(g, *r);
  }
  if (!lx.done()) lx.fail("trailing characters");
  return out;
}

}  // namespace cartan
