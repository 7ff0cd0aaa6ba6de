#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "curvops/minimizer.hpp"

using namespace curvops;

TEST_CASE("f_eval basics") {
  std::vector<double> uniform(9, 1.0 / 9.0);
  CHECK(f_eval(uniform, 0.3, 1.0) == doctest::Approx(0.3 / 9.0 + 1.0 / 81.0));
  std::vector<double> zeros(5, 0.0);
  CHECK(f_eval(zeros, 1.0, 1.0) == 0.0);
  std::vector<double> v{-1.0, 1.0, 1.0};
  CHECK(f_eval(v, 1.0, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("f is homogeneous of degree 3 under joint scaling") {
  const std::vector<double> lam{-0.2, 0.1, 0.3, 0.8};
  const double B = -0.05, C = 1.0, t = 2.5;
  std::vector<double> scaled;
  for (const double l : lam) scaled.push_back(t * l);
  CHECK(rel_residual(f_eval(scaled, B, t * C), t * t * t * f_eval(lam, B, C)) <= 1e-12);
}

TEST_CASE("candidate points: small cases and invariants") {
  const auto c1 = candidate_points(9, 1, 1.0, 0.1);
  REQUIRE(c1.size() == 2);
  CHECK(c1[0].lambdas == std::vector<double>(9, 1.0 / 9.0));
  CHECK(c1[1].lambdas[0] == 0.0);
  CHECK(c1[1].lambdas[1] == doctest::Approx(1.0 / 8.0));

  const auto c3 = candidate_points(65, 3, 1.0, 0.2);
  REQUIRE(c3.size() == 4);
  for (const auto& p : c3) {
    double total = 0.0, head = 0.0;
    for (int i = 0; i < 65; ++i) {
      total += p.lambdas[i];
      if (i < 3) head += p.lambdas[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    const double expected_head = p.m == 0 ? 3.0 / 65.0 : 0.0;
    CHECK(std::abs(head - expected_head) <= 1e-12);
    for (int i = 1; i < 65; ++i) CHECK(p.lambdas[i] >= p.lambdas[i - 1] - 1e-15);
  }
  // spike endpoint lambda_1 = -(k2-1) C/(N-k2)
  CHECK(c3[1].m == 1);
  CHECK(c3[1].lambdas[0] == doctest::Approx(-2.0 / 62.0));

  for (const auto& p : candidate_points(9, 2, 0.0, 0.3)) {
    CHECK(p.f_value == 0.0);
    for (const double l : p.lambdas) CHECK(l == 0.0);
  }

  CHECK_THROWS_AS(candidate_points(5, 5, 1.0, 0.1), BadProblem);
  CHECK_THROWS_AS(candidate_points(5, 0, 1.0, 0.1), BadProblem);
  CHECK_THROWS_AS(candidate_points(5, 1, -1.0, 0.1), BadProblem);
}

TEST_CASE("g profile: closed form equals f minus the shared tail") {
  const int N = 65, k2 = 3;
  const double C = 1.0, B = theorem11_B_value(11);
  const GProfile prof = g_profile(N, k2, C, B);
  const auto candidates = candidate_points(N, k2, C, B);
  for (int m = 1; m <= k2; ++m) {
    const double expected = candidates[m].f_value - prof.shared_tail;
    CHECK(rel_residual(prof.g_values[m - 1], expected) <= 1e-12);
  }
  CHECK(prof.minimizer_at_boundary);
  CHECK((prof.argmin_m == 1 || prof.argmin_m == k2));

  const GProfile single = g_profile(9, 1, 1.0, 0.5);
  CHECK(single.g_values.size() == 1);
  CHECK(single.argmin_m == 1);
  CHECK(single.minimizer_at_boundary);
}

TEST_CASE("g profile minimizer stays at the boundary across the theorem family") {
  for (int n = 8; n <= 40; ++n) {
    const int N = (n - 1) * (n + 2) / 2;
    const int k2 = hypothesis_k2(n);
    if (k2 < 2) continue;
    CHECK(g_profile(N, k2, 1.0, theorem11_B_value(n)).minimizer_at_boundary);
  }
}

TEST_CASE("grid oracle: candidate sufficiency on spot cells") {
  {
    const auto brute = brute_min(5, 1, 1.0, 0.5, OracleMode::grid, 40, 1);
    const auto cand = candidate_points(5, 1, 1.0, 0.5);
    double cmin = cand[0].f_value;
    for (const auto& p : cand) cmin = std::min(cmin, p.f_value);
    CHECK(brute.min_value >= cmin - grid_tolerance(5, 1.0, 40));
    CHECK(brute.min_value <= cmin + 1e-3);  // the lattice nearly contains the candidates
  }
  {
    const double B = theorem11_B_value(8);
    const auto brute = brute_min(6, 2, 1.0, B, OracleMode::grid, 40, 1);
    const auto cand = candidate_points(6, 2, 1.0, B);
    double cmin = cand[0].f_value;
    for (const auto& p : cand) cmin = std::min(cmin, p.f_value);
    CHECK(brute.min_value >= cmin - grid_tolerance(6, 1.0, 40));
  }
  {
    const auto brute = brute_min(7, 2, 0.0, 0.5, OracleMode::grid, 40, 1);
    CHECK(brute.min_value == 0.0);
  }
  CHECK_THROWS_AS(brute_min(100, 1, 1.0, 0.1, OracleMode::grid, 40, 1), BudgetExceeded);
  CHECK_THROWS_AS(brute_min(20, 5, 1.0, 0.1, OracleMode::grid, 40, 1), BudgetExceeded);
}

TEST_CASE("grid oracle argmin is feasible") {
  const auto brute = brute_min(8, 3, 1.0, -0.05, OracleMode::grid, 30, 1);
  REQUIRE(static_cast<int>(brute.argmin.size()) == 8);
  double total = 0.0, head = 0.0;
  for (int i = 0; i < 8; ++i) {
    total += brute.argmin[i];
    if (i < 3) head += brute.argmin[i];
    if (i) CHECK(brute.argmin[i] >= brute.argmin[i - 1] - 1e-12);
  }
  CHECK(std::abs(total - 1.0) <= 1e-9);
  CHECK(head >= -1e-12);
  CHECK(std::abs(head - brute.argmin_a) <= 1e-9);
}

TEST_CASE("a-scan dichotomy holds for positive B") {
  for (const double B : {0.05, 0.5}) {
    const auto scan = brute_min_scan(7, 2, 1.0, B, 40);
    CHECK(scan.dichotomy);
  }
  const auto scan11 = brute_min_scan(10, 3, 1.0, theorem11_B_value(11), 30);
  CHECK(scan11.dichotomy);
}

TEST_CASE("random oracle stays above the candidate minimum") {
  const double B = -0.05;
  const auto cand = candidate_points(9, 2, 1.0, B);
  double cmin = cand[0].f_value;
  for (const auto& p : cand) cmin = std::min(cmin, p.f_value);
  const auto brute = brute_min(9, 2, 1.0, B, OracleMode::random, 200, 3);
  CHECK(brute.min_value >= cmin - grid_tolerance(9, 1.0, 40));
  double total = 0.0;
  for (const double l : brute.argmin) total += l;
  CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("remark 4.5 coefficient sign") {
  CHECK(remark45_coefficient(8).value == doctest::Approx(8.0 / 1680.0));
  CHECK(remark45_coefficient(8).positive);
  CHECK(remark45_coefficient(7).value < 0.0);
  CHECK_FALSE(remark45_coefficient(7).positive);
  CHECK(remark45_coefficient(10).value == doctest::Approx(48.0 / 3240.0));
  CHECK(remark45_coefficient(10).positive);
}

TEST_CASE("theorem F table: spot values and verdict grid") {
  const auto rows = theorem_F_table(4, 60);
  for (const auto& row : rows) {
    // positive exactly on the n >= 6 grid; the corrected small-dimension
    // route turns the spike value negative at n in {4,5}
    CHECK(row.verdict == (row.n >= 6));
    CHECK(row.k2 == hypothesis_k2(row.n));
    // candidate f-values are consistent with the F columns through the
    // uniform-point difference
    const double f_uniform = row.candidate_f[0];
    const double f_spike = row.candidate_f[1];
    const double f_zero = row.candidate_f[row.k2];
    CHECK(rel_residual(row.F_zero_block, f_zero - f_uniform) <= 1e-10);
    CHECK(rel_residual(row.F_spike, f_spike - f_uniform) <= 1e-10);
  }

  const auto& r11 = rows[7];
  REQUIRE(r11.n == 11);
  CHECK(r11.N == 65);
  CHECK(r11.k2 == 3);
  CHECK(r11.F_zero_block == doctest::Approx(2.485e-5).epsilon(1e-3));

  const auto& r8 = rows[4];
  REQUIRE(r8.n == 8);
  CHECK(r8.k2 == 2);
  CHECK(r8.F_zero_block > 0.0);
  CHECK(r8.F_spike > 0.0);

  const auto& r6 = rows[2];
  REQUIRE(r6.n == 6);
  CHECK(r6.k2 == 1);
  CHECK(r6.branch == "uniform-minimizer");
  // with k2 = 1 the spike candidate degenerates to the zero-block point
  CHECK(rel_residual(r6.F_spike, r6.F_zero_block) <= 1e-10);

  CHECK(rows[0].branch == "theorem-1.2");
  CHECK_THROWS_AS(theorem_F_table(3, 10), BadRange);
}

TEST_CASE("a weakened hypothesis breaks the spike positivity") {
  // k2 = 3 at n = 8 is weaker than the stated k2 = 2 and the spike F-value
  // goes negative, so the verdict grid is sharp.
  const int n = 8, N = 35, k2 = 3;
  const double B = theorem11_B_value(n), C = 1.0;
  const auto cand = candidate_points(N, k2, C, B);
  const double f_spike = cand[1].f_value, f_uniform = cand[0].f_value;
  CHECK(f_spike - f_uniform < 0.0);
}
