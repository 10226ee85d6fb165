#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>

#include "cartan/errors.hpp"

namespace cartan {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + std::string(text) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

// n = square * square_free with square_free square-free; n > 0.
// Trial division, so intended for the small radicands that occur in practice.
inline std::pair<Integer, Integer> split_square(Integer n) {
  Integer root = 1;
  Integer free_part = 1;
  auto strip = [&](const Integer& p) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) free_part *= p;
  };
  strip(Integer(2));
  for (Integer p = 3; p * p <= n; p += 2) strip(p);
  free_part *= n;
  return {root, free_part};
}

}  // namespace cartan
