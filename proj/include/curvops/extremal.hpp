#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvops/common.hpp"

namespace curvops {

/// Data of the weighted-sum criterion: a nondecreasing sequence lambda, a
/// nonnegative weight sequence theta, Theta = max theta and
/// k = floor(sum theta / Theta). If the k smallest lambdas sum to >= 0 then
/// sum lambda_i theta_i >= 0. All-zero weights degenerate to k = 0 with a
/// vacuously true premise.
struct WeightedSequence {
  std::vector<double> lambdas;
  std::vector<double> thetas;

  WeightedSequence(std::vector<double> l, std::vector<double> t);

  double theta_max = 0.0;
  int k = 0;
};

struct Lemma41Result {
  bool premise = false;
  double conclusion_value = 0.0;
};

Lemma41Result lemma41_guarantee(const WeightedSequence& ws);

/// The three index patterns of the constrained maximization of
/// (a_i + a_j + a_k + a_l)^2 over { sum a = 0, sum a^2 = 1 }.
enum class ExtremalPattern {
  distinct4,    // i,j,k,l pairwise distinct
  repeat_ik,    // i = k; i,j,l distinct
  double_pair,  // i = k, j = l, i != j
};

const char* pattern_name(ExtremalPattern p);
ExtremalPattern pattern_from_name(const std::string& name);

/// Closed-form maxima 4(n-4)/n, 2(3n-8)/n, 8(n-2)/n; they are ordered
/// double_pair >= repeat_ik >= distinct4 for every n >= 4.
double case_extremum_closed(int n, ExtremalPattern pattern);

struct ExtremalNumeric {
  double max_value = 0.0;
  std::vector<double> argmax;
  int converged_starts = 0;
  double dispersion = 0.0;  // spread of per-start best values
};

/// Multi-start projected gradient ascent on the sphere slice; best-of over
/// `starts` deterministic substreams of `seed`. distinct4 at n = 4 returns
/// exactly 0 (the objective is identically zero there).
ExtremalNumeric case_extremum_numeric(int n, ExtremalPattern pattern, int starts,
                                      std::uint64_t seed);

/// Least-squares residual of the Lagrange stationarity system at `a`:
/// distance of the objective gradient from span{1, a}, relative to its norm.
double lagrange_residual(const std::vector<double>& a, ExtremalPattern pattern);

struct K1Ratio {
  double ratio = 0.0;
  int k1 = 0;
  bool holds = false;
};

/// ratio = (n^2+n-8)/(4(n-2)) against k1 = floor((n+2)/4).
K1Ratio k1_ratio_check(int n);

}  // namespace curvops
