#include <doctest.h>

#include <optional>

#include "extconv/simplex.hpp"
#include "support.hpp"

using namespace extconv;

namespace {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

// Solves the square system M y = r by Gauss-Jordan; nullopt if singular.
std::optional<Vec> solve_square(Mat M, Vec r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && M[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(M[p], M[col]);
    std::swap(r[p], r[col]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      const Rational f = M[i][col] / M[col][col];
      for (std::size_t j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      r[i] -= f * r[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) r[i] /= M[i][i];
  return r;
}

// Minimum over all basic feasible points: every choice of nv tight
// constraints among A x <= b and x >= 0.
std::optional<Rational> vertex_oracle(const Mat& A, const Vec& b, const Vec& c) {
  const std::size_t nv = c.size();
  Mat rows = A;
  Vec rhs = b;
  for (std::size_t j = 0; j < nv; ++j) {
    Vec e(nv);
    e[j] = -1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  std::vector<int> pick(nv);
  for (std::size_t i = 0; i < nv; ++i) pick[i] = static_cast<int>(i);
  do {
    Mat M;
    Vec r;
    for (int p : pick) {
      M.push_back(rows[p]);
      r.push_back(rhs[p]);
    }
    const auto x = solve_square(M, r);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < rows.size() && feasible; ++i) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < nv; ++j) lhs += rows[i][j] * (*x)[j];
      feasible = lhs <= rhs[i];
    }
    if (!feasible) continue;
    Rational z = 0;
    for (std::size_t j = 0; j < nv; ++j) z += c[j] * (*x)[j];
    if (!best || z < *best) best = z;
  } while (next_combination(pick, static_cast<int>(rows.size())));
  return best;
}

std::vector<std::vector<double>> to_double(const Mat& A) {
  std::vector<std::vector<double>> out;
  for (const auto& row : A) {
    std::vector<double> r;
    for (const auto& v : row) r.push_back(v.get_d());
    out.push_back(r);
  }
  return out;
}

std::vector<double> to_double(const Vec& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace

TEST_CASE("small LP by hand") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6  ->  optimum at (8/5, 6/5)
  const Mat A{{1, 2}, {3, 1}};
  const auto r = solve_lp<Rational>(A, {4, 6}, {-1, -1});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Rational(-14, 5));
  CHECK(r.x[0] == Rational(8, 5));
  CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("phase one: negative right-hand sides") {
  // x >= 1, y >= 2, x + y <= 10, minimize x + 3y
  const Mat A{{-1, 0}, {0, -1}, {1, 1}};
  const auto r = solve_lp<Rational>(A, {-1, -2, 10}, {1, 3});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == 7);
  const auto d = solve_lp<double>(to_double(A), {-1, -2, 10}, {1, 3});
  REQUIRE(d.status == LpStatus::optimal);
  CHECK(d.objective == doctest::Approx(7));
}

TEST_CASE("infeasible and unbounded") {
  // x <= 1 and x >= 2
  CHECK(solve_lp<Rational>({{1}, {-1}}, {1, -2}, {1}).status == LpStatus::infeasible);
  // minimize -x with only x - y <= 1
  CHECK(solve_lp<Rational>({{1, -1}}, {1}, {-1, 0}).status == LpStatus::unbounded);
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  const Mat A{{Rational(1, 4), -8, -1, 9}, {Rational(1, 2), -12, Rational(-1, 2), 3}, {0, 0, 1, 0}};
  const Vec b{0, 0, 1};
  const Vec c{Rational(-3, 4), 20, Rational(-1, 2), 6};
  const auto r = solve_lp<Rational>(A, b, c);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == *vertex_oracle(A, b, c));
  CHECK(r.objective == Rational(-5, 4));
  const auto d = solve_lp<double>(to_double(A), to_double(b), to_double(c));
  REQUIRE(d.status == LpStatus::optimal);
  CHECK(d.objective == doctest::Approx(-1.25));
}

TEST_CASE("random bounded LPs agree with vertex enumeration") {
  for (int trial = 0; trial < 40; ++trial) {
    const int nv = static_cast<int>(testing::random_int(1, 3));
    const int m = static_cast<int>(testing::random_int(1, 4));
    Mat A;
    Vec b;
    for (int i = 0; i < m; ++i) {
      Vec row;
      for (int j = 0; j < nv; ++j) row.emplace_back(testing::random_int(-3, 3));
      A.push_back(row);
      b.emplace_back(testing::random_int(-4, 6));
    }
    // box keeps every instance bounded
    for (int j = 0; j < nv; ++j) {
      Vec row(nv);
      row[j] = 1;
      A.push_back(row);
      b.emplace_back(5);
    }
    Vec c;
    for (int j = 0; j < nv; ++j) c.emplace_back(testing::random_int(-3, 3));
    const auto oracle = vertex_oracle(A, b, c);
    const auto r = solve_lp<Rational>(A, b, c);
    const auto d = solve_lp<double>(to_double(A), to_double(b), to_double(c));
    if (!oracle) {
      CHECK(r.status == LpStatus::infeasible);
      CHECK(d.status == LpStatus::infeasible);
      continue;
    }
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == *oracle);
    REQUIRE(d.status == LpStatus::optimal);
    CHECK(d.objective == doctest::Approx(oracle->get_d()));
    for (std::size_t i = 0; i < A.size(); ++i) {
      Rational lhs = 0;
      for (int j = 0; j < nv; ++j) lhs += A[i][j] * r.x[j];
      CHECK(lhs <= b[i]);
    }
  }
}

TEST_CASE("iteration cap is reported") {
  const Mat A{{1, 2}, {3, 1}};
  CHECK(solve_lp<Rational>(A, {4, 6}, {-1, -1}, 0).status == LpStatus::iteration_limit);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(solve_lp<Rational>({{1, 2}}, {1, 2}, {1, 1}), DomainError);
  CHECK_THROWS_AS(solve_lp<Rational>({{1}}, {1}, {1, 1}), DomainError);
}
