#pragma once

// Shared generators and brute-force oracles for the test suites. The
// oracles deliberately avoid the library's rank tables and sign helpers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "extconv/exterior.hpp"
#include "extconv/multiindex.hpp"
#include "extconv/polynomial.hpp"
#include "extconv/scalar.hpp"
#include "extconv/shapespace.hpp"

namespace testing {

using extconv::KForm;
using extconv::MultiIndex;
using extconv::Rational;
using extconv::ShapeMatrix;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline long random_int(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

/// Small rational with denominator in 1..4.
inline Rational random_rational(long span = 5) {
  Rational q(random_int(-span, span), random_int(1, 4));
  q.canonicalize();
  return q;
}

inline KForm<Rational> random_form(int n, int k, long span = 5) {
  KForm<Rational> out(n, k);
  for (auto& c : out.coeffs()) c = random_rational(span);
  return out;
}

inline ShapeMatrix<Rational> random_integer_matrix(int n, int k, long span = 5) {
  ShapeMatrix<Rational> out(n, k);
  for (auto& v : out.data()) v = Rational(random_int(-span, span));
  return out;
}

/// Parity by counting adjacent transpositions in a bubble sort.
inline int oracle_sign(std::vector<int> s) {
  int swaps = 0;
  for (std::size_t pass = 0; pass < s.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] > s[i + 1]) {
        std::swap(s[i], s[i + 1]);
        ++swaps;
      }
    }
  }
  return swaps % 2 ? -1 : 1;
}

/// Basis multiindices of T^k by brute-force filtering of all subsets,
/// sorted lexicographically.
inline std::vector<std::vector<int>> oracle_basis(int n, int k) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> idx;
    for (int v = 1; v <= n; ++v) {
      if (mask & (1u << (v - 1))) idx.push_back(v);
    }
    out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t oracle_position(const std::vector<std::vector<int>>& basis, const std::vector<int>& I) {
  return static_cast<std::size_t>(std::find(basis.begin(), basis.end(), I) - basis.begin());
}

/// Wedge product from the definition on basis elements.
template <class S>
KForm<S> oracle_wedge(const KForm<S>& a, const KForm<S>& b) {
  const int n = a.n();
  const auto ba = oracle_basis(n, a.degree());
  const auto bb = oracle_basis(n, b.degree());
  KForm<S> out(n, a.degree() + b.degree());
  if (out.size() == 0) return out;
  const auto bo = oracle_basis(n, a.degree() + b.degree());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    for (std::size_t j = 0; j < bb.size(); ++j) {
      std::vector<int> s = ba[i];
      s.insert(s.end(), bb[j].begin(), bb[j].end());
      std::vector<int> sorted = s;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      const S term = a[i] * b[j];
      if (oracle_sign(s) > 0) out[oracle_position(bo, sorted)] += term;
      else out[oracle_position(bo, sorted)] -= term;
    }
  }
  return out;
}

template <class S>
KForm<S> oracle_power(const KForm<S>& x, int s) {
  KForm<S> out = KForm<S>::scalar(x.n(), S(1));
  for (int i = 0; i < s; ++i) out = oracle_wedge(out, x);
  return out;
}

/// Leibniz permutation-sum determinant.
template <class S>
S oracle_det(const std::vector<std::vector<S>>& m) {
  const int size = static_cast<int>(m.size());
  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  S total{};
  do {
    S term(1);
    for (int r = 0; r < size; ++r) term *= m[r][perm[r]];
    if (oracle_sign(perm) > 0) total += term; else total -= term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline extconv::Polynomial random_polynomial(int n, int max_degree, int terms = 3) {
  extconv::Polynomial p;
  for (int t = 0; t < terms; ++t) {
    extconv::Monomial m(n, 0);
    const int deg = static_cast<int>(random_int(0, max_degree));
    for (int d = 0; d < deg; ++d) ++m[random_int(0, n - 1)];
    p += extconv::Polynomial::monomial(m, random_rational(4));
  }
  return p;
}

}  // namespace testing
