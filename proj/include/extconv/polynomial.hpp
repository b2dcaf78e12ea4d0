#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "extconv/scalar.hpp"

namespace extconv {

/// Exponent vector (x_1^{e_1} ... x_m^{e_m}); trailing zeros are trimmed so
/// that equal monomials compare equal regardless of the ambient dimension.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// Graded order: higher total degree first, then lexicographically larger
/// exponent vectors first (x1 > x2 > ...).
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial in x_1, x_2, ... with rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& constant);
  explicit Polynomial(long constant) : Polynomial(Rational(constant)) {}

  static Polynomial variable(int index);  // x_index, 1-based
  static Polynomial monomial(Monomial exponents, const Rational& coefficient);

  /// Accepts "3/2*x1^2*x3 - x2", "x1*x2 + 4", "-1/3". Whitespace is ignored.
  static Polynomial parse(std::string_view text);

  const std::map<Monomial, Rational, GradedLexGreater>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  /// Largest variable index that occurs (0 for constants).
  int max_variable() const;

  Polynomial derivative(int index) const;
  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational, GradedLexGreater> terms_;
};

}  // namespace extconv
