#pragma once

#include <vector>

#include "extconv/scalar.hpp"

namespace extconv {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status);

template <class S>
struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  S objective{};
  std::vector<S> x;
  int pivots = 0;
};

/// minimize c.x subject to A x <= b, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule. Phase one adds a
/// single artificial column (coefficient -1 in every row) and pivots it in
/// on the most negative right-hand side, which makes the start feasible.
/// double uses absolute tolerance 1e-10; Rational is exact.
template <class S>
LpResult<S> solve_lp(const std::vector<std::vector<S>>& A, const std::vector<S>& b, const std::vector<S>& c,
                     int max_pivots = 100000);

extern template LpResult<double> solve_lp(const std::vector<std::vector<double>>&, const std::vector<double>&,
                                          const std::vector<double>&, int);
extern template LpResult<Rational> solve_lp(const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
                                            const std::vector<Rational>&, int);

}  // namespace extconv
