#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extconv/exterior.hpp"
#include "extconv/multiindex.hpp"
#include "extconv/scalar.hpp"

namespace extconv {

/// Xi in R^{C(n,k-1) x n}. Row r is the r-th member of T^{k-1} in
/// alphabetical order; column c (0-based) is the direction e^{c+1}.
template <class S>
class ShapeMatrix {
 public:
  ShapeMatrix() = default;
  ShapeMatrix(int n, int k) : n_(n), k_(k), rows_(binomial(n, k - 1)), data_(rows_ * n) {
    if (k < 1 || k > n) throw DomainError("ShapeMatrix: need 1 <= k <= n");
  }
  ShapeMatrix(int n, int k, std::vector<S> row_major) : ShapeMatrix(n, k) {
    if (row_major.size() != data_.size()) throw DomainError("ShapeMatrix: expected C(n,k-1)*n entries");
    data_ = std::move(row_major);
  }

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return static_cast<std::size_t>(n_); }

  S& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const S& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  std::span<S> data() & { return data_; }
  std::span<const S> data() const& { return data_; }
  std::span<const S> data() const&& = delete;

  /// Xi_i as a (k-1)-form (column i, 1-based).
  KForm<S> column_form(int i) const {
    KForm<S> out(n_, k_ - 1);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, i - 1);
    return out;
  }

  bool is_zero() const {
    for (const auto& v : data_) {
      if (!extconv::is_zero(v)) return false;
    }
    return true;
  }

  ShapeMatrix& operator+=(const ShapeMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ShapeMatrix& operator*=(const S& f) {
    for (auto& v : data_) v *= f;
    return *this;
  }
  friend ShapeMatrix operator+(ShapeMatrix a, const ShapeMatrix& b) { return a += b; }
  friend ShapeMatrix operator*(ShapeMatrix a, const S& f) { return a *= f; }
  friend bool operator==(const ShapeMatrix&, const ShapeMatrix&) = default;

  template <class F>
  auto map(F&& f) const {
    using T = std::decay_t<decltype(f(data_.front()))>;
    std::vector<T> out;
    out.reserve(data_.size());
    for (const auto& v : data_) out.push_back(f(v));
    return ShapeMatrix<T>(n_, k_, std::move(out));
  }

  void require_same_shape(const ShapeMatrix& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw DomainError("shape-matrix shape mismatch");
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::size_t rows_ = 0;
  std::vector<S> data_;
};

/// All s x s minors of a shape-matrix. Row sets are s-subsets of the
/// C(n,k-1) rows, column sets s-subsets of 1..n, both ranked
/// lexicographically; values are plain determinants (no cofactor signs).
template <class S>
class MinorTable {
 public:
  MinorTable() = default;
  MinorTable(int n, int k, int s)
      : n_(n), k_(k), s_(s), parent_rows_(static_cast<int>(binomial(n, k - 1))),
        row_sets_(binomial(parent_rows_, s)), col_sets_(binomial(n, s)),
        values_(row_sets_ * col_sets_) {
    if (s < 0) throw DomainError("MinorTable: negative order");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int order() const { return s_; }
  int parent_rows() const { return parent_rows_; }
  std::size_t row_sets() const { return row_sets_; }
  std::size_t col_sets() const { return col_sets_; }
  std::size_t size() const { return values_.size(); }

  S& operator()(std::size_t row_set, std::size_t col_set) { return values_[row_set * col_sets_ + col_set]; }
  const S& operator()(std::size_t row_set, std::size_t col_set) const {
    return values_[row_set * col_sets_ + col_set];
  }
  S& operator[](std::size_t flat) { return values_[flat]; }
  const S& operator[](std::size_t flat) const { return values_[flat]; }
  std::span<S> values() & { return values_; }
  std::span<const S> values() const& { return values_; }
  std::span<const S> values() const&& = delete;

  /// Row set as a multiindex over 1..C(n,k-1) (row positions, 1-based).
  MultiIndex row_set(std::size_t rank) const { return MultiIndex::unrank(rank, parent_rows_, s_); }
  MultiIndex col_set(std::size_t rank) const { return MultiIndex::unrank(rank, n_, s_); }

  bool same_space(const MinorTable& o) const { return n_ == o.n_ && k_ == o.k_ && s_ == o.s_; }
  friend bool operator==(const MinorTable&, const MinorTable&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  int s_ = 0;
  int parent_rows_ = 0;
  std::size_t row_sets_ = 0;
  std::size_t col_sets_ = 0;
  std::vector<S> values_;
};

/// alpha (x) beta: entry (I, i) = alpha_I * beta_i.
template <class S>
ShapeMatrix<S> tensor(const KForm<S>& alpha, std::span<const S> beta) {
  if (static_cast<int>(beta.size()) != alpha.n()) throw DomainError("tensor: beta must have n entries");
  ShapeMatrix<S> out(alpha.n(), alpha.degree() + 1);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = alpha[r] * beta[c];
  }
  return out;
}

template <class S>
ShapeMatrix<S> tensor(const KForm<S>& alpha, const KForm<S>& beta) {
  if (beta.degree() != 1) throw DomainError("tensor: beta must be a 1-form");
  return tensor(alpha, beta.coeffs());
}

namespace detail {

inline bool pivot_better(const Rational& cand, const Rational& best) { return best == 0 && cand != 0; }
inline bool pivot_better(double cand, double best) { return std::fabs(cand) > std::fabs(best); }

/// Determinant of a dense m x m row-major block. Direct expansion for
/// m <= 3, fraction-free (Bareiss) elimination otherwise.
template <class S>
S small_determinant(std::vector<S> a, int m) {
  auto at = [&](int r, int c) -> S& { return a[r * m + c]; };
  switch (m) {
    case 0: return from_int<S>(1);
    case 1: return a[0];
    case 2: return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default: break;
  }
  int sign = 1;
  S prev = from_int<S>(1);
  for (int p = 0; p < m - 1; ++p) {
    int best = p;
    for (int r = p + 1; r < m; ++r) {
      if (pivot_better(at(r, p), at(best, p))) best = r;
    }
    if (is_zero(at(best, p))) return S{};
    if (best != p) {
      for (int c = 0; c < m; ++c) std::swap(at(p, c), at(best, c));
      sign = -sign;
    }
    for (int r = p + 1; r < m; ++r) {
      for (int c = p + 1; c < m; ++c) {
        at(r, c) = (at(r, c) * at(p, p) - at(r, p) * at(p, c)) / prev;
      }
    }
    prev = at(p, p);
  }
  S det = at(m - 1, m - 1);
  return sign > 0 ? det : S(-det);
}

}  // namespace detail

/// adj_s X: every s x s minor, rows and columns taken in increasing order.
template <class S>
MinorTable<S> adjugate(const ShapeMatrix<S>& x, int s) {
  const int rows = static_cast<int>(x.rows());
  if (s < 0 || s > std::min(x.n(), rows)) {
    throw DomainError("adjugate: order s=" + std::to_string(s) + " outside 0..min(n, C(n,k-1))");
  }
  MinorTable<S> out(x.n(), x.k(), s);
  if (s == 0) {
    out[0] = from_int<S>(1);
    return out;
  }
  std::vector<int> rsel(s);
  std::iota(rsel.begin(), rsel.end(), 0);
  std::vector<S> block(static_cast<std::size_t>(s) * s);
  std::size_t flat = 0;
  do {
    std::vector<int> csel(s);
    std::iota(csel.begin(), csel.end(), 0);
    do {
      for (int a = 0; a < s; ++a) {
        for (int b = 0; b < s; ++b) block[a * s + b] = x(rsel[a], csel[b]);
      }
      out[flat++] = detail::small_determinant(block, s);
    } while (next_combination(csel, x.n()));
  } while (next_combination(rsel, rows));
  return out;
}

template <class S>
struct LaplaceReport {
  S max_residual{};
  std::size_t entries_checked = 0;
  std::size_t entries_failed = 0;
};

/// Checks every entry of `next` (order s+1) against the cofactor expansion
/// along its l-th column (1-based):
///   next(R, C) = sum_m X(R_m, C_l) (-1)^{l+m} lower(R \ R_m, C \ C_l).
template <class S>
LaplaceReport<S> laplace_expand(const MinorTable<S>& next, const MinorTable<S>& lower, const ShapeMatrix<S>& x,
                                int l) {
  if (lower.n() != x.n() || lower.k() != x.k() || next.n() != x.n() || next.k() != x.k()) {
    throw DomainError("laplace_expand: tables and matrix describe different spaces");
  }
  if (next.order() != lower.order() + 1) throw DomainError("laplace_expand: orders must be s+1 and s");
  const int s1 = next.order();
  if (l < 1 || l > s1) throw DomainError("laplace_expand: row position out of range");
  const int rows = static_cast<int>(x.rows());

  LaplaceReport<S> report;
  std::vector<int> rsel(s1);
  std::iota(rsel.begin(), rsel.end(), 0);
  do {
    std::vector<int> csel(s1);
    std::iota(csel.begin(), csel.end(), 0);
    const auto row_rank = MultiIndex([&] {
      std::vector<int> v(rsel);
      for (auto& e : v) ++e;
      return v;
    }(), rows).rank();
    do {
      const auto col_rank = MultiIndex([&] {
        std::vector<int> v(csel);
        for (auto& e : v) ++e;
        return v;
      }(), x.n()).rank();
      std::vector<int> cols_minor;
      for (int b = 0; b < s1; ++b) {
        if (b != l - 1) cols_minor.push_back(csel[b] + 1);
      }
      const auto minor_col = MultiIndex(cols_minor, x.n()).rank();
      S expansion{};
      for (int m = 1; m <= s1; ++m) {
        std::vector<int> rows_minor;
        for (int a = 0; a < s1; ++a) {
          if (a != m - 1) rows_minor.push_back(rsel[a] + 1);
        }
        const auto minor_row = MultiIndex(rows_minor, rows).rank();
        accumulate_signed(expansion, (l + m) % 2 ? -1 : 1, x(rsel[m - 1], csel[l - 1]) * lower(minor_row, minor_col));
      }
      const S residual = abs_value(S(next(row_rank, col_rank) - expansion));
      ++report.entries_checked;
      if (!is_zero(residual)) ++report.entries_failed;
      if (residual > report.max_residual) report.max_residual = residual;
    } while (next_combination(csel, x.n()));
  } while (next_combination(rsel, rows));
  return report;
}

}  // namespace extconv
