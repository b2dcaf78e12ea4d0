#pragma once

#include <span>

#include "extconv/exterior.hpp"
#include "extconv/polynomial.hpp"
#include "extconv/shapespace.hpp"

namespace extconv {

/// Differential form on R^n with polynomial coefficients in x_1..x_n.
using PolyKForm = KForm<Polynomial>;

/// Throws unless every coefficient only uses the variables x_1..x_n.
void validate_variables(const PolyKForm& w);

/// grad w: entry (I, i) = d w_I / d x_i, as a shape-matrix of degree deg w + 1.
ShapeMatrix<Polynomial> gradient(const PolyKForm& w);

/// d w = sum_I sum_i (d w_I / d x_i) e^I ^ e^i (derivative direction
/// wedged on the right). This is the convention under which pi(grad w) = d w.
PolyKForm d_right(const PolyKForm& w);

/// (d w)_{i_1..i_{r+1}} = sum_j (-1)^{j+1} d w_{..i_j-hat..} / d x_{i_j}
/// (derivative direction wedged on the left). Equals (-1)^r d_right(w).
PolyKForm d_classical(const PolyKForm& w);

KForm<Rational> evaluate(const PolyKForm& w, std::span<const Rational> point);
ShapeMatrix<Rational> evaluate(const ShapeMatrix<Polynomial>& m, std::span<const Rational> point);

}  // namespace extconv
