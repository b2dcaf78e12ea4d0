#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace extconv {

/// Exact backend scalar.
using Rational = mpq_class;

enum class Backend { exact, float64 };

/// Parses "3", "-3/2", or a decimal such as "0.25" exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double x) { return std::fabs(x); }

template <class S>
bool is_zero(const S& x) {
  return x == S{};
}

template <class S>
S from_int(std::int64_t v) {
  return S(static_cast<long>(v));
}
template <>
inline double from_int<double>(std::int64_t v) {
  return static_cast<double>(v);
}

/// Adds sign * x to acc without converting the sign into a scalar.
template <class S>
void accumulate_signed(S& acc, int sign, const std::type_identity_t<S>& x) {
  if (sign > 0) acc += x;
  else if (sign < 0) acc -= x;
}

}  // namespace extconv
