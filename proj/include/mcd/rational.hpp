#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "mcd/errors.hpp"

namespace mcd {

// Exact arithmetic scalars. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the canonical form this project
// serializes ("p/q", q > 0, gcd(p,q) = 1).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw parse_error("rational with zero denominator");
  return Rat(num) / Rat(den);
}

inline int sign(const Rat& r) { return r.sign(); }
inline int sign(const Int& i) { return i.sign(); }

inline std::string int_str(const Int& i) { return i.str(); }

/// Canonical "p/q" form, denominator always written (e.g. "3/1", "-1/2").
inline std::string rat_str(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p" or "p/q" with optional leading sign; q > 0 after reduction.
/// Decimal points and exponents are rejected.
inline Rat parse_rat(std::string_view s) {
  auto fail = [&] { throw parse_error("bad rational literal: '" + std::string(s) + "'"); };
  std::size_t pos = 0;
  auto read_int = [&]() -> Int {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      neg = s[pos] == '-';
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) fail();
    Int v(std::string(s.substr(start, pos - start)));
    return neg ? Int(-v) : v;
  };
  Int num = read_int();
  Int den = 1;
  if (pos < s.size()) {
    if (s[pos] != '/') fail();
    ++pos;
    den = read_int();
    if (pos != s.size()) fail();
    if (den == 0) fail();
  }
  return make_rat(num, den);
}

}  // namespace mcd
