#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "extconv/exterior.hpp"
#include "extconv/multiindex.hpp"
#include "extconv/shapespace.hpp"

namespace extconv {

/// pi(X) = sum_i X_i ^ e^i, computed coefficientwise:
///   pi(X)_I = sum_{j in I} sign_append(j, I_j) X_j^{I_j}.
template <class S>
KForm<S> pi(const ShapeMatrix<S>& x) {
  const int n = x.n();
  const int k = x.k();
  if (k < 2) throw DomainError("pi: the projection is defined for 2 <= k <= n");
  KForm<S> out(n, k);
  const auto basis = enumerate(n, k);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto& I = basis[r];
    S acc{};
    for (int j : I) {
      const auto rest = I.without(j);
      accumulate_signed(acc, sign_append(j, rest), x(rest.rank(), j - 1));
    }
    out[r] = std::move(acc);
  }
  return out;
}

/// pi(X) evaluated literally as the wedge sum over columns.
template <class S>
KForm<S> pi_wedge_sum(const ShapeMatrix<S>& x) {
  if (x.k() < 2) throw DomainError("pi: the projection is defined for 2 <= k <= n");
  KForm<S> out(x.n(), x.k());
  for (int i = 1; i <= x.n(); ++i) {
    out += wedge(x.column_form(i), KForm<S>::basis(MultiIndex({i}, x.n())));
  }
  return out;
}

/// A shape-matrix with pi(right_inverse(x)) = x: each coefficient x_I is
/// placed at row I \ {max I}, column max I.
template <class S>
ShapeMatrix<S> right_inverse(const KForm<S>& x) {
  const int n = x.n();
  const int k = x.degree();
  if (k < 2 || k > n) throw DomainError("right_inverse: need 2 <= k <= n");
  ShapeMatrix<S> out(n, k);
  const auto basis = enumerate(n, k);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const int top = basis[r][k - 1];
    out(basis[r].without(top).rank(), top - 1) = x[r];
  }
  return out;
}

/// Sign carried by the (J; I~) term of the adjugate formula under the
/// wedge-sum convention of pi: (-1)^{s(k-1)} sgn(J; I~).
inline Sign adjugate_term_sign(const Partition& p, int k) {
  const int s = p.J.size();
  const Sign parity = (s * (k - 1)) % 2 ? -1 : 1;
  return parity * sign_interlace(p.J, p.blocks);
}

/// Position of a partition's (row set, column set) in the flattened minor space.
inline std::size_t minor_slot(const Partition& p, int n, int parent_rows) {
  std::vector<int> rows;
  rows.reserve(p.blocks.size());
  for (const auto& b : p.blocks) rows.push_back(static_cast<int>(b.rank()) + 1);
  const auto row_rank = MultiIndex(std::move(rows), parent_rows).rank();
  return row_rank * binomial(n, p.J.size()) + p.J.rank();
}

inline std::int64_t factorial(int s) {
  std::int64_t out = 1;
  for (int i = 2; i <= s; ++i) out *= i;
  return out;
}

/// The same formula applied to a precomputed minor table (any order s >= 1).
template <class S>
KForm<S> wedge_power_from_minors(const MinorTable<S>& minors) {
  const int n = minors.n();
  const int k = minors.k();
  const int s = minors.order();
  KForm<S> out(n, s * k);
  if (out.size() == 0 || (k % 2 == 1 && s >= 2)) return out;
  const S scale = from_int<S>(factorial(s));
  const auto basis = enumerate(n, s * k);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    S acc{};
    for_each_partition(basis[r], s, k, [&](const Partition& p) {
      accumulate_signed(acc, adjugate_term_sign(p, k), minors[minor_slot(p, n, minors.parent_rows())]);
    });
    out[r] = acc * scale;
  }
  return out;
}

/// [pi(X)]^s from the s-th adjugate:
///   (+/-) s! sum_{I in T^{sk}} (sum over partitions of I of sgn(J;I~) (adj_s X)^{I~}_J) e^I.
/// Odd k and s > [n/k] return zero without computing minors.
template <class S>
KForm<S> wedge_power_via_adjugate(const ShapeMatrix<S>& x, int s) {
  const int n = x.n();
  const int k = x.k();
  const int max_s = std::min<int>(n, static_cast<int>(x.rows()));
  if (s < 2 || s > max_s) {
    throw DomainError("wedge_power_via_adjugate: need 2 <= s <= min(n, C(n,k-1))");
  }
  if (k % 2 == 1 || s * k > n) return KForm<S>(n, s * k);
  return wedge_power_from_minors(adjugate(x, s));
}

/// Explicit matrix of pi_s: minor space -> Lambda^{ks}. Entries are integers
/// (+/- s! on partition slots, 0 elsewhere), stored densely row-major.
struct PiSMap {
  int n = 0;
  int k = 0;
  int s = 0;
  std::size_t rows = 0;  // C(n, ks)
  std::size_t cols = 0;  // C(C(n,k-1), s) * C(n, s)
  std::vector<std::int64_t> entries;

  std::int64_t operator()(std::size_t row, std::size_t col) const { return entries[row * cols + col]; }
  bool is_zero() const {
    for (auto e : entries) {
      if (e != 0) return false;
    }
    return true;
  }
};

/// Largest dense pi_s map we are willing to materialise.
inline constexpr std::size_t kMaxPiSEntries = 50'000'000;

PiSMap build_pi_s(int n, int k, int s);

/// pi_s applied to an arbitrary element of the minor space.
template <class S>
KForm<S> apply(const PiSMap& map, const MinorTable<S>& m) {
  if (m.n() != map.n || m.k() != map.k || m.order() != map.s) throw DomainError("apply: minor table does not match map");
  KForm<S> out(map.n, map.k * map.s);
  for (std::size_t r = 0; r < map.rows; ++r) {
    S acc{};
    for (std::size_t c = 0; c < map.cols; ++c) {
      const auto e = map(r, c);
      if (e != 0 && !is_zero(m[c])) acc += m[c] * from_int<S>(e);
    }
    out[r] = std::move(acc);
  }
  return out;
}

/// <a, b> on the minor space (Frobenius pairing).
template <class S>
S pairing(const MinorTable<S>& a, const MinorTable<S>& b) {
  if (!a.same_space(b)) throw DomainError("pairing: minor tables live in different spaces");
  S acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

/// d_s = pi_s^T D_s for each supplied D_s (D[0] is D_1, of degree k).
/// The minor-space dimension is fixed by the shape-matrix degree k.
template <class S>
std::vector<MinorTable<S>> pullback_support(const std::vector<KForm<S>>& D, int k) {
  std::vector<MinorTable<S>> out;
  for (std::size_t idx = 0; idx < D.size(); ++idx) {
    const int s = static_cast<int>(idx) + 1;
    const auto& Ds = D[idx];
    if (Ds.degree() != k * s) {
      throw DomainError("pullback_support: D_" + std::to_string(s) + " must have degree " + std::to_string(k * s));
    }
    const PiSMap map = build_pi_s(Ds.n(), k, s);
    MinorTable<S> ds(Ds.n(), k, s);
    for (std::size_t r = 0; r < map.rows; ++r) {
      if (is_zero(Ds[r])) continue;
      for (std::size_t c = 0; c < map.cols; ++c) {
        const auto e = map(r, c);
        if (e != 0) ds[c] += Ds[r] * from_int<S>(e);
      }
    }
    out.push_back(std::move(ds));
  }
  return out;
}

}  // namespace extconv
