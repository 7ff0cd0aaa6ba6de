#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "curvops/extremal.hpp"
#include "curvops/generators.hpp"
#include "curvops/identities.hpp"
#include "curvops/jacobi.hpp"
#include "curvops/rng.hpp"

using namespace curvops;

TEST_CASE("lemma 4.1: worked example and degenerate weights") {
  const WeightedSequence ws({-1.0, 2.0, 3.0}, {1.0, 1.0, 0.5});
  CHECK(ws.theta_max == 1.0);
  CHECK(ws.k == 2);
  const Lemma41Result res = lemma41_guarantee(ws);
  CHECK(res.premise);
  CHECK(res.conclusion_value == doctest::Approx(2.5));

  const WeightedSequence zero({-1.0, 2.0}, {0.0, 0.0});
  CHECK(zero.k == 0);
  const Lemma41Result rz = lemma41_guarantee(zero);
  CHECK(rz.premise);  // vacuously
  CHECK(rz.conclusion_value == 0.0);

  CHECK_THROWS_AS(WeightedSequence({}, {}), EmptyInput);
  CHECK_THROWS_AS(WeightedSequence({2.0, 1.0}, {1.0, 1.0}), BadParams);
  CHECK_THROWS_AS(WeightedSequence({1.0, 2.0}, {1.0, -1.0}), BadParams);
}

TEST_CASE("lemma 4.1: randomized oracle over many sequences") {
  Rng rng(314);
  int tested = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const int m = 2 + static_cast<int>(rng.next_u64() % 12);
    std::vector<double> lam(m), theta(m);
    for (double& x : lam) x = rng.gaussian();
    std::sort(lam.begin(), lam.end());
    for (double& t : theta) t = std::abs(rng.gaussian());
    const WeightedSequence ws(lam, theta);
    const Lemma41Result res = lemma41_guarantee(ws);
    if (res.premise) {
      ++tested;
      CHECK(res.conclusion_value >= -1e-12);
    }
  }
  CHECK(tested > 1000);
}

TEST_CASE("closed-form extrema and their ordering") {
  CHECK(case_extremum_closed(4, ExtremalPattern::distinct4) == doctest::Approx(0.0));
  CHECK(case_extremum_closed(4, ExtremalPattern::repeat_ik) == doctest::Approx(2.0));
  CHECK(case_extremum_closed(4, ExtremalPattern::double_pair) == doctest::Approx(4.0));

  CHECK(case_extremum_closed(8, ExtremalPattern::distinct4) == doctest::Approx(2.0));
  CHECK(case_extremum_closed(8, ExtremalPattern::repeat_ik) == doctest::Approx(4.0));
  CHECK(case_extremum_closed(8, ExtremalPattern::double_pair) == doctest::Approx(6.0));

  for (int n = 4; n <= 200; ++n) {
    const double c1 = case_extremum_closed(n, ExtremalPattern::distinct4);
    const double c2 = case_extremum_closed(n, ExtremalPattern::repeat_ik);
    const double c3 = case_extremum_closed(n, ExtremalPattern::double_pair);
    CHECK(c3 >= c2);
    CHECK(c2 >= c1);
  }
}

TEST_CASE("numeric optimizer matches the closed forms") {
  const auto dp8 = case_extremum_numeric(8, ExtremalPattern::double_pair, 32, 1);
  CHECK(std::abs(dp8.max_value - 6.0) <= 1e-6);

  const auto rp6 = case_extremum_numeric(6, ExtremalPattern::repeat_ik, 32, 1);
  CHECK(std::abs(rp6.max_value - 10.0 / 3.0) <= 1e-6);

  const auto d5 = case_extremum_numeric(5, ExtremalPattern::distinct4, 32, 1);
  CHECK(std::abs(d5.max_value - 0.8) <= 1e-6);
  // active coordinates satisfy a_i^2 = (n-4)/(4n) = 1/20
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(d5.argmax[i] * d5.argmax[i] - 0.05) <= 1e-4);

  const auto d4 = case_extremum_numeric(4, ExtremalPattern::distinct4, 8, 1);
  CHECK(d4.max_value == 0.0);
}

TEST_CASE("numeric maxima across dimensions with stationarity residuals") {
  for (int n = 5; n <= 12; ++n)
    for (const ExtremalPattern p :
         {ExtremalPattern::distinct4, ExtremalPattern::repeat_ik, ExtremalPattern::double_pair}) {
      const double closed = case_extremum_closed(n, p);
      const auto num = case_extremum_numeric(n, p, 64, 7);
      CHECK(std::abs(num.max_value - closed) <= 1e-6);
      CHECK(lagrange_residual(num.argmax, p) <= 1e-6);

      double sum = 0.0, norm = 0.0;
      for (const double x : num.argmax) {
        sum += x;
        norm += x * x;
      }
      CHECK(std::abs(sum) <= 1e-12);
      CHECK(std::abs(norm - 1.0) <= 1e-12);
    }
}

TEST_CASE("k1 ratio bound") {
  const K1Ratio r4 = k1_ratio_check(4);
  CHECK(r4.ratio == doctest::Approx(1.5));
  CHECK(r4.k1 == 1);
  CHECK(r4.holds);

  const K1Ratio r11 = k1_ratio_check(11);
  CHECK(r11.ratio == doctest::Approx(124.0 / 36.0));
  CHECK(r11.k1 == 3);
  CHECK(r11.holds);

  for (int n = 4; n <= 1000; ++n) CHECK(k1_ratio_check(n).holds);
}

TEST_CASE("end to end: k1-nonnegative spectra give nonnegative weighted sums") {
  // Weighted sum of |S^a W|^2 against the eigenvalues of an independent
  // Einstein operator whose spectrum is k1-nonnegative but not nonnegative:
  // the scalar part is tuned so the smallest eigenvalue dips just below zero.
  int exercised = 0;
  const int n = 11;
  const int k1 = (n + 2) / 4;
  for (int trial = 0; trial < 3; ++trial) {
    const CurvTensor w0 = random_weyl(n, 9100 + trial);
    const Spectrum weyl_spec = spectrum(op_second_kind(w0));
    const double shift = -weyl_spec.eigenvalues.front() * (1.0 - 1e-3);
    REQUIRE(shift > 0.0);
    const double s_target = shift * n * (n - 1);
    const Sym2 g = Sym2::identity(n);
    CurvTensor r = w0;
    r += (s_target / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);

    const Spectrum spec = spectrum(op_second_kind(r));
    REQUIRE(spec.eigenvalues.front() < 0.0);
    REQUIRE(delta_nonnegative(spec, static_cast<double>(k1)).holds);
    ++exercised;

    const CurvTensor w = random_weyl(n, 9900 + trial);
    std::vector<double> thetas;
    for (const Sym2& sa : spec.eigentensors) thetas.push_back(apply_sym2(sa, w).norm_sq());
    const WeightedSequence ws(spec.eigenvalues, thetas);
    CHECK(ws.k >= k1);
    const Lemma41Result res = lemma41_guarantee(ws);
    CHECK(res.premise);
    CHECK(res.conclusion_value >= -1e-8 * (1.0 + std::abs(res.conclusion_value)));
  }
  CHECK(exercised == 3);
}
