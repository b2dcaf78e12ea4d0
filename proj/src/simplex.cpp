#include "extconv/simplex.hpp"

#include <cmath>
#include <stdexcept>

#include "extconv/multiindex.hpp"

namespace extconv {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
    case LpStatus::iteration_limit:
      return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kEps = 1e-10;

bool negative(double x) { return x < -kEps; }
bool negative(const Rational& x) { return sgn(x) < 0; }
bool positive(double x) { return x > kEps; }
bool positive(const Rational& x) { return sgn(x) > 0; }
bool nonzero(double x) { return std::fabs(x) > kEps; }
bool nonzero(const Rational& x) { return sgn(x) != 0; }
bool tied(double a, double b) { return std::fabs(a - b) <= kEps * std::max(1.0, std::fabs(b)); }
bool tied(const Rational& a, const Rational& b) { return a == b; }

template <class S>
class Tableau {
 public:
  Tableau(const std::vector<std::vector<S>>& A, const std::vector<S>& b, std::size_t nv)
      : m_(b.size()), nv_(nv), width_(nv + b.size() + 1), t_(b.size(), std::vector<S>(width_)), rhs_(b),
        basis_(b.size()), d_(width_), banned_(width_, false) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < nv_; ++j) t_[i][j] = A[i][j];
      t_[i][nv_ + i] = 1;
      t_[i][artificial()] = -1;
      basis_[i] = nv_ + i;
    }
  }

  std::size_t artificial() const { return nv_ + m_; }

  void pivot(std::size_t r, std::size_t q) {
    const S p = t_[r][q];
    auto& row = t_[r];
    for (auto& v : row) {
      if (nonzero(v)) v /= p;
    }
    rhs_[r] /= p;
    row[q] = 1;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < width_; ++j) {
      if (nonzero(row[j])) support.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || !nonzero(t_[i][q])) continue;
      const S f = t_[i][q];
      for (auto j : support) t_[i][j] -= f * row[j];
      t_[i][q] = 0;
      rhs_[i] -= f * rhs_[r];
    }
    if (nonzero(d_[q])) {
      const S f = d_[q];
      for (auto j : support) d_[j] -= f * row[j];
      d_[q] = 0;
      negz_ -= f * rhs_[r];
    }
    basis_[r] = q;
    ++pivots_;
  }

  /// Sets the reduced-cost row for the cost vector over all columns.
  void price(const std::vector<S>& cost) {
    d_ = cost;
    negz_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const S cb = cost[basis_[i]];
      if (!nonzero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (nonzero(t_[i][j])) d_[j] -= cb * t_[i][j];
      }
      negz_ -= cb * rhs_[i];
    }
  }

  /// Bland's rule iterations; returns optimal, unbounded or iteration_limit.
  LpStatus run(int max_pivots) {
    while (true) {
      std::size_t q = width_;
      for (std::size_t j = 0; j < width_; ++j) {
        if (!banned_[j] && negative(d_[j])) {
          q = j;
          break;
        }
      }
      if (q == width_) return LpStatus::optimal;
      std::size_t r = m_;
      S best{};
      for (std::size_t i = 0; i < m_; ++i) {
        if (!positive(t_[i][q])) continue;
        S ratio = rhs_[i] / t_[i][q];
        if (r == m_ || (!tied(ratio, best) && ratio < best) || (tied(ratio, best) && basis_[i] < basis_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r == m_) return LpStatus::unbounded;
      if (pivots_ >= max_pivots) return LpStatus::iteration_limit;
      pivot(r, q);
    }
  }

  std::size_t m_;
  std::size_t nv_;
  std::size_t width_;
  std::vector<std::vector<S>> t_;
  std::vector<S> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<S> d_;
  S negz_{};
  std::vector<bool> banned_;
  int pivots_ = 0;
};

}  // namespace

template <class S>
LpResult<S> solve_lp(const std::vector<std::vector<S>>& A, const std::vector<S>& b, const std::vector<S>& c,
                     int max_pivots) {
  const std::size_t m = b.size();
  const std::size_t nv = c.size();
  if (A.size() != m) throw DomainError("solve_lp: A and b disagree on the row count");
  for (const auto& row : A) {
    if (row.size() != nv) throw DomainError("solve_lp: every row of A needs one entry per variable");
  }
  Tableau<S> tab(A, b, nv);
  LpResult<S> result;

  std::size_t worst = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (negative(b[i]) && (worst == m || b[i] < b[worst])) worst = i;
  }
  if (worst != m) {
    std::vector<S> phase1(tab.width_);
    phase1[tab.artificial()] = 1;
    tab.price(phase1);
    tab.pivot(worst, tab.artificial());
    const auto status = tab.run(max_pivots);
    result.pivots = tab.pivots_;
    if (status == LpStatus::iteration_limit) {
      result.status = status;
      return result;
    }
    if (status == LpStatus::unbounded) throw std::logic_error("solve_lp: phase one cannot be unbounded");
    if (positive(S(-tab.negz_))) {
      result.status = LpStatus::infeasible;
      return result;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis_[i] != tab.artificial()) continue;
      for (std::size_t j = 0; j < tab.artificial(); ++j) {
        if (nonzero(tab.t_[i][j])) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }
  tab.banned_[tab.artificial()] = true;
  std::vector<S> cost(tab.width_);
  for (std::size_t j = 0; j < nv; ++j) cost[j] = c[j];
  tab.price(cost);
  result.status = tab.run(max_pivots);
  result.pivots = tab.pivots_;
  result.x.assign(nv, S{});
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis_[i] < nv) result.x[tab.basis_[i]] = tab.rhs_[i];
  }
  result.objective = 0;
  for (std::size_t j = 0; j < nv; ++j) result.objective += c[j] * result.x[j];
  return result;
}

template LpResult<double> solve_lp(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                   const std::vector<double>&, int);
template LpResult<Rational> solve_lp(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                     const std::vector<Rational>&, int);

}  // namespace extconv
