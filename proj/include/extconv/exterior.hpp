#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extconv/multiindex.hpp"
#include "extconv/scalar.hpp"

namespace extconv {

/// An element of Lambda^k(R^n), stored densely over the lexicographic basis
/// of T^k. Degrees above n are the zero space (no coefficients).
///
/// S is any commutative ring scalar with value-initialised zero: Rational,
/// double, or Polynomial for forms with polynomial coefficients.
template <class S>
class KForm {
 public:
  KForm() = default;
  KForm(int n, int k) : n_(n), k_(k), coeffs_(binomial(n, k)) {
    if (n < 0 || k < 0) throw DomainError("KForm: negative dimension or degree");
  }
  KForm(int n, int k, std::vector<S> coeffs) : n_(n), k_(k), coeffs_(std::move(coeffs)) {
    if (n < 0 || k < 0) throw DomainError("KForm: negative dimension or degree");
    if (coeffs_.size() != binomial(n, k)) throw DomainError("KForm: coefficient count must be C(n,k)");
  }

  static KForm basis(const MultiIndex& I) {
    KForm out(I.n(), I.size());
    out.coeffs_[I.rank()] = from_int<S>(1);
    return out;
  }
  static KForm scalar(int n, S value) {
    KForm out(n, 0);
    out.coeffs_[0] = std::move(value);
    return out;
  }

  int n() const { return n_; }
  int degree() const { return k_; }
  std::size_t size() const { return coeffs_.size(); }

  S& operator[](std::size_t rank) { return coeffs_[rank]; }
  const S& operator[](std::size_t rank) const { return coeffs_[rank]; }
  S& at(const MultiIndex& I) { return coeffs_.at(checked_rank(I)); }
  const S& at(const MultiIndex& I) const { return coeffs_.at(checked_rank(I)); }

  std::span<S> coeffs() & { return coeffs_; }
  std::span<const S> coeffs() const& { return coeffs_; }
  std::span<const S> coeffs() const&& = delete;

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!extconv::is_zero(c)) return false;
    }
    return true;
  }

  KForm& operator+=(const KForm& other) {
    require_same_shape(other);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] += other.coeffs_[r];
    return *this;
  }
  KForm& operator-=(const KForm& other) {
    require_same_shape(other);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) coeffs_[r] -= other.coeffs_[r];
    return *this;
  }
  KForm& operator*=(const S& factor) {
    for (auto& c : coeffs_) c *= factor;
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, const S& f) { return a *= f; }
  friend KForm operator*(const S& f, KForm a) { return a *= f; }
  friend KForm operator-(KForm a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(coeffs_.front()))>;
    std::vector<T> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return KForm<T>(n_, k_, std::move(out));
  }

  void require_same_shape(const KForm& other) const {
    if (n_ != other.n_ || k_ != other.k_) {
      throw DomainError("form shape mismatch: (n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
                        ") vs (n=" + std::to_string(other.n_) + ",k=" + std::to_string(other.k_) + ")");
    }
  }

 private:
  std::size_t checked_rank(const MultiIndex& I) const {
    if (I.n() != n_ || I.size() != k_) throw DomainError("multiindex does not belong to this form's basis");
    return I.rank();
  }

  int n_ = 0;
  int k_ = 0;
  std::vector<S> coeffs_;
};

/// Exterior product. e^I ^ e^J = sgn(I J) e^{[I u J]} for disjoint I, J.
template <class S>
KForm<S> wedge(const KForm<S>& a, const KForm<S>& b) {
  if (a.n() != b.n()) throw DomainError("wedge: dimension mismatch");
  const int n = a.n();
  KForm<S> out(n, a.degree() + b.degree());
  if (out.size() == 0) return out;
  const auto& ma = detail::basis_masks(n, a.degree());
  const auto& mb = detail::basis_masks(n, b.degree());
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (ma[i] & mb[j]) continue;
      if (is_zero(b[j])) continue;
      const auto target = detail::rank_of_mask(ma[i] | mb[j], n);
      accumulate_signed(out[target], detail::concat_sign(ma[i], mb[j]), a[i] * b[j]);
    }
  }
  return out;
}

/// x^0 = 1, x^s = x ^ x^{s-1}.
template <class S>
KForm<S> wedge_power(const KForm<S>& x, int s) {
  if (s < 0) throw DomainError("wedge_power: negative exponent");
  KForm<S> out = KForm<S>::scalar(x.n(), from_int<S>(1));
  for (int step = 0; step < s; ++step) {
    out = wedge(x, out);
    if (out.size() == 0) {
      return KForm<S>(x.n(), x.degree() * s);
    }
  }
  return out;
}

template <class S>
S scalar_product(const KForm<S>& a, const KForm<S>& b) {
  a.require_same_shape(b);
  S acc{};
  for (std::size_t r = 0; r < a.size(); ++r) acc += a[r] * b[r];
  return acc;
}

/// |a|^2
template <class S>
S norm_squared(const KForm<S>& a) {
  return scalar_product(a, a);
}

/// *e^I = sgn(I I^c) e^{I^c}
template <class S>
KForm<S> hodge_star(const KForm<S>& x) {
  const int n = x.n();
  if (x.degree() > n) return KForm<S>(n, 0);
  KForm<S> out(n, n - x.degree());
  const auto& masks = detail::basis_masks(n, x.degree());
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  for (std::size_t r = 0; r < masks.size(); ++r) {
    const auto comp = full & ~masks[r];
    accumulate_signed(out[detail::rank_of_mask(comp, n)], detail::concat_sign(masks[r], comp), x[r]);
  }
  return out;
}

/// The volume form e^{1...n}.
template <class S>
KForm<S> volume_form(int n) {
  return KForm<S>(n, n, {from_int<S>(1)});
}

}  // namespace extconv
