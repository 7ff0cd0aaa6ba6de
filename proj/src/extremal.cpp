#include "curvops/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "curvops/rng.hpp"

namespace curvops {

WeightedSequence::WeightedSequence(std::vector<double> l, std::vector<double> t)
    : lambdas(std::move(l)), thetas(std::move(t)) {
  if (lambdas.empty()) throw EmptyInput("WeightedSequence: empty sequence");
  if (lambdas.size() != thetas.size())
    throw SizeMismatch("WeightedSequence: lambda/theta length mismatch");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (lambdas[i] < lambdas[i - 1])
      throw BadParams("WeightedSequence: lambdas must be nondecreasing");
  double sum = 0.0;
  for (const double th : thetas) {
    if (th < 0.0) throw BadParams("WeightedSequence: thetas must be nonnegative");
    theta_max = std::max(theta_max, th);
    sum += th;
  }
  k = theta_max > 0.0
          ? std::min<int>(static_cast<int>(std::floor(sum / theta_max)),
                          static_cast<int>(lambdas.size()))
          : 0;
}

Lemma41Result lemma41_guarantee(const WeightedSequence& ws) {
  Lemma41Result out;
  double head = 0.0;
  for (int i = 0; i < ws.k; ++i) head += ws.lambdas[i];
  out.premise = head >= 0.0;  // vacuously true at k = 0
  for (std::size_t i = 0; i < ws.lambdas.size(); ++i)
    out.conclusion_value += ws.lambdas[i] * ws.thetas[i];
  return out;
}

const char* pattern_name(ExtremalPattern p) {
  switch (p) {
    case ExtremalPattern::distinct4: return "distinct4";
    case ExtremalPattern::repeat_ik: return "repeat-i=k";
    default: return "double-pair";
  }
}

ExtremalPattern pattern_from_name(const std::string& name) {
  if (name == "distinct4") return ExtremalPattern::distinct4;
  if (name == "repeat-i=k") return ExtremalPattern::repeat_ik;
  if (name == "double-pair") return ExtremalPattern::double_pair;
  throw BadPattern("unknown pattern '" + name + "'");
}

double case_extremum_closed(int n, ExtremalPattern pattern) {
  if (n < 4) throw BadPattern("case_extremum_closed: need n >= 4");
  const double nn = n;
  switch (pattern) {
    case ExtremalPattern::distinct4: return 4.0 * (nn - 4.0) / nn;
    case ExtremalPattern::repeat_ik: return 2.0 * (3.0 * nn - 8.0) / nn;
    default: return 8.0 * (nn - 2.0) / nn;
  }
}

namespace {

/// Multiplicity weights of the active indices; the objective is (w . a)^2.
std::vector<double> pattern_weights(int n, ExtremalPattern pattern) {
  std::vector<double> w(n, 0.0);
  switch (pattern) {
    case ExtremalPattern::distinct4: w[0] = w[1] = w[2] = w[3] = 1.0; break;
    case ExtremalPattern::repeat_ik: w[0] = 2.0; w[1] = w[2] = 1.0; break;
    default: w[0] = 2.0; w[1] = 2.0; break;
  }
  return w;
}

void project_feasible(std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  double mean = 0.0;
  for (const double x : a) mean += x;
  mean /= n;
  double norm = 0.0;
  for (double& x : a) {
    x -= mean;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : a) x /= norm;
}

}  // namespace

ExtremalNumeric case_extremum_numeric(int n, ExtremalPattern pattern, int starts,
                                      std::uint64_t seed) {
  if (n < 4) throw BadPattern("case_extremum_numeric: need n >= 4");
  if (starts < 1) throw BadParams("case_extremum_numeric: need at least one start");

  if (pattern == ExtremalPattern::distinct4 && n == 4) {
    // (a_i+a_j+a_k+a_l) is the full sum, identically 0 on the constraint set.
    ExtremalNumeric out;
    out.max_value = 0.0;
    out.argmax = {-0.5, -0.5, 0.5, 0.5};
    out.converged_starts = starts;
    return out;
  }
  if (pattern == ExtremalPattern::distinct4 && n < 5)
    throw BadPattern("case_extremum_numeric: distinct4 needs n >= 5");

  const std::vector<double> w = pattern_weights(n, pattern);
  ExtremalNumeric out;
  double best = -1.0, worst_start_best = 1e300;
  std::vector<double> best_a;
  int converged = 0;

  for (int start = 0; start < starts; ++start) {
    Rng rng(mix_seed(seed, "extremal-start", static_cast<std::uint64_t>(start)));
    std::vector<double> a(n);
    for (double& x : a) x = rng.gaussian();
    project_feasible(a);

    std::vector<double> start_best_a = a;
    double start_best = -1.0;
    double last_marked = -1.0;
    int stalled = 0;
    constexpr int kMaxIters = 10000;
    for (int iter = 0; iter < kMaxIters; ++iter) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += w[i] * a[i];
      const double value = dot * dot;
      if (value > start_best) {
        start_best = value;
        start_best_a = a;
      }
      if (value > last_marked + 1e-12) {
        last_marked = value;
        stalled = 0;
      } else if (++stalled > 200) {
        // step improvements stayed below 1e-12 long enough for the
        // stationarity residual to settle as well
        break;
      }

      // gradient of (w.a)^2, projected tangent to both constraints
      std::vector<double> g(n);
      double gmean = 0.0;
      for (int i = 0; i < n; ++i) {
        g[i] = 2.0 * dot * w[i];
        gmean += g[i];
      }
      gmean /= n;
      double ga = 0.0;
      for (int i = 0; i < n; ++i) {
        g[i] -= gmean;
        ga += g[i] * a[i];
      }
      for (int i = 0; i < n; ++i) g[i] -= ga * a[i];

      const double step = 0.1 / (1.0 + iter / 50.0);
      for (int i = 0; i < n; ++i) a[i] += step * g[i];
      project_feasible(a);
    }
    ++converged;
    worst_start_best = std::min(worst_start_best, start_best);
    if (start_best > best) {
      best = start_best;
      best_a = start_best_a;
    }
  }
  if (converged == 0) throw OptFailure("case_extremum_numeric: no start converged");
  out.max_value = best;
  out.argmax = best_a;
  out.converged_starts = converged;
  out.dispersion = best - worst_start_best;
  return out;
}

double lagrange_residual(const std::vector<double>& a, ExtremalPattern pattern) {
  const int n = static_cast<int>(a.size());
  const std::vector<double> w = pattern_weights(n, pattern);
  double dot = 0.0;
  for (int i = 0; i < n; ++i) dot += w[i] * a[i];

  // grad = 2 (w.a) w; constraint gradients u = (1,...,1) and v = 2a.
  std::vector<double> g(n), u(n, 1.0), v(n);
  double gn = 0.0;
  for (int i = 0; i < n; ++i) {
    g[i] = 2.0 * dot * w[i];
    v[i] = 2.0 * a[i];
    gn += g[i] * g[i];
  }
  // least squares over span{u, v}
  double uu = 0.0, uv = 0.0, vv = 0.0, gu = 0.0, gv = 0.0;
  for (int i = 0; i < n; ++i) {
    uu += u[i] * u[i];
    uv += u[i] * v[i];
    vv += v[i] * v[i];
    gu += g[i] * u[i];
    gv += g[i] * v[i];
  }
  const double det = uu * vv - uv * uv;
  double m1 = 0.0, m2 = 0.0;
  if (std::abs(det) > 1e-14) {
    m1 = (gu * vv - gv * uv) / det;
    m2 = (gv * uu - gu * uv) / det;
  }
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = g[i] - m1 * u[i] - m2 * v[i];
    res += d * d;
  }
  return std::sqrt(res) / (1.0 + std::sqrt(gn));
}

K1Ratio k1_ratio_check(int n) {
  if (n < 4) throw BadParams("k1_ratio_check: need n >= 4");
  K1Ratio out;
  out.ratio = (static_cast<double>(n) * n + n - 8.0) / (4.0 * (n - 2.0));
  out.k1 = (n + 2) / 4;
  out.holds = out.ratio >= static_cast<double>(out.k1);
  return out;
}

}  // namespace curvops
