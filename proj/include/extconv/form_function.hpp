#pragma once

#include <memory>
#include <vector>

#include "extconv/exterior.hpp"
#include "extconv/io.hpp"

namespace extconv {

namespace detail {
struct Node;
}

/// f : Lambda^k(R^n) -> R given by an expression tree.
///
/// Document: {"n":4,"k":2,"expr":E}. E is "xi" or an object with "op":
///   xi                              the argument (a k-form)
///   const      {"value"}            scalar constant
///   inner      {"form","arg"}       <form, arg>; form is "e1234", "e1,3,10" or form JSON
///   norm2      {"arg"}              |arg|^2
///   wedge_pow  {"s","arg"}          arg^s
///   wedge      {"args":[a,b,...]}   a ^ b ^ ...
///   add        {"args":[...]}       sum of scalars, or of forms of one degree
///   mul        {"args":[...]}       product of scalars
///   scale      {"c","arg"}          c * arg
///   neg        {"arg"}
///   abs        {"arg"}              scalar only
///   pow        {"p","arg"}          scalar raised to an integer p >= 0
/// Constants are exact; evaluation works on Rational and double.
class FormFunction {
 public:
  static FormFunction parse(const Json& doc);

  int n() const { return n_; }
  int k() const { return k_; }
  Json to_json() const;

  template <class S>
  S operator()(const KForm<S>& xi) const;

 private:
  int n_ = 0;
  int k_ = 0;
  Json expr_;
  std::shared_ptr<const detail::Node> root_;
};

extern template Rational FormFunction::operator()(const KForm<Rational>&) const;
extern template double FormFunction::operator()(const KForm<double>&) const;

/// |xi|^2 scaled by factor (use -1 for the concave example).
FormFunction norm_squared_function(int n, int k, const Rational& factor = 1);

/// f(xi) = sum_s <c_s, xi^s>; c[s] must have degree k*s (c[0] is a 0-form).
FormFunction quasiaffine_function(int n, int k, const std::vector<KForm<Rational>>& c);

}  // namespace extconv
