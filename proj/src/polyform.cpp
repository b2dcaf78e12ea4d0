#include "extconv/polyform.hpp"

namespace extconv {

void validate_variables(const PolyKForm& w) {
  for (const auto& c : w.coeffs()) {
    if (c.max_variable() > w.n()) {
      throw DomainError("polynomial coefficient uses x" + std::to_string(c.max_variable()) + " but n=" +
                        std::to_string(w.n()));
    }
  }
}

ShapeMatrix<Polynomial> gradient(const PolyKForm& w) {
  validate_variables(w);
  ShapeMatrix<Polynomial> out(w.n(), w.degree() + 1);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (int i = 1; i <= w.n(); ++i) out(r, i - 1) = w[r].derivative(i);
  }
  return out;
}

PolyKForm d_right(const PolyKForm& w) {
  validate_variables(w);
  const int n = w.n();
  PolyKForm out(n, w.degree() + 1);
  if (out.size() == 0) return out;
  for (int i = 1; i <= n; ++i) {
    auto partial = w.map([i](const Polynomial& p) { return p.derivative(i); });
    out += wedge(partial, PolyKForm::basis(MultiIndex({i}, n)));
  }
  return out;
}

PolyKForm d_classical(const PolyKForm& w) {
  validate_variables(w);
  const int n = w.n();
  const int r = w.degree();
  PolyKForm out(n, r + 1);
  if (out.size() == 0) return out;
  const auto basis = enumerate(n, r + 1);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const auto& I = basis[idx];
    Polynomial acc;
    for (int j = 1; j <= r + 1; ++j) {
      const int ij = I[j - 1];
      const auto term = w[I.without(ij).rank()].derivative(ij);
      if (j % 2 == 1) acc += term; else acc -= term;
    }
    out[idx] = std::move(acc);
  }
  return out;
}

KForm<Rational> evaluate(const PolyKForm& w, std::span<const Rational> point) {
  return w.map([&](const Polynomial& p) { return p.evaluate(point); });
}

ShapeMatrix<Rational> evaluate(const ShapeMatrix<Polynomial>& m, std::span<const Rational> point) {
  return m.map([&](const Polynomial& p) { return p.evaluate(point); });
}

}  // namespace extconv
