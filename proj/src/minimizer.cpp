#include "curvops/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvops/rng.hpp"

namespace curvops {

void SeqProblem::validate() const {
  if (N < 2 || k2 < 1 || k2 >= N) throw BadProblem("SeqProblem: need 1 <= k2 < N");
  if (C < 0.0) throw BadProblem("SeqProblem: need C >= 0");
  if (a < -1e-12 || a > k2 * C / N + 1e-12)
    throw BadProblem("SeqProblem: partial sum a outside [0, k2 C / N]");
}

double f_eval(std::span<const double> lambdas, double B, double C) {
  double s2 = 0.0, s3 = 0.0;
  for (const double l : lambdas) {
    s2 += l * l;
    s3 += l * l * l;
  }
  return B * C * s2 + s3;
}

std::vector<CandidatePoint> candidate_points(int N, int k2, double C, double B) {
  SeqProblem{N, k2, C, 0.0, B, std::nullopt}.validate();
  std::vector<CandidatePoint> out;

  CandidatePoint uniform;
  uniform.m = 0;
  uniform.lambdas.assign(N, C / N);
  uniform.a_m = k2 * C / N;
  uniform.f_value = f_eval(uniform.lambdas, B, C);
  out.push_back(std::move(uniform));

  const double tail = C / (N - k2);
  for (int m = 1; m <= k2; ++m) {
    CandidatePoint p;
    p.m = m;
    p.a_m = -(k2 - m) * C / (N - k2);
    p.lambdas.assign(N, tail);
    for (int i = 0; i < m; ++i) p.lambdas[i] = p.a_m / m;
    p.f_value = f_eval(p.lambdas, B, C);
    out.push_back(std::move(p));
  }
  return out;
}

GProfile g_profile(int N, int k2, double C, double B) {
  SeqProblem{N, k2, C, 0.0, B, std::nullopt}.validate();
  GProfile out;
  const double d = N - k2;
  out.shared_tail = B * C * C * C / d + C * C * C / (d * d);
  for (int m = 1; m <= k2; ++m) {
    const double r = k2 - m;
    const double g = B * C * (r * r * C * C / (m * d * d) + r * C * C / (d * d)) -
                     r * r * r * C * C * C / (m * m * d * d * d) +
                     r * C * C * C / (d * d * d);
    out.g_values.push_back(g);
    const double gp = -(k2 * k2 * C * C * C / (m * m * m * d * d * d)) *
                      ((B * d + 3.0) * m - 2.0 * k2);
    out.g_prime.push_back(gp);
  }
  out.argmin_m = 1;
  for (int m = 2; m <= k2; ++m)
    if (out.g_values[m - 1] < out.g_values[out.argmin_m - 1]) out.argmin_m = m;
  out.minimizer_at_boundary = (out.argmin_m == 1 || out.argmin_m == k2);
  return out;
}

double grid_tolerance(int N, double C, int resolution) {
  return C * N / resolution;
}

namespace {

/// Exact minimization over nondecreasing integer-lattice tails of length L,
/// entries >= lb, summing to S (units of h = C/budget). Memoized on
/// (L, lb, S); choices kept for argmin reconstruction.
struct TailDp {
  int max_len, max_units;
  double h, B, C;
  std::vector<double> value;
  std::vector<int> choice;
  std::vector<bool> known;

  TailDp(int max_len_, int max_units_, double h_, double B_, double C_)
      : max_len(max_len_), max_units(max_units_), h(h_), B(B_), C(C_) {
    const std::size_t states =
        static_cast<std::size_t>(max_len + 1) * (max_units + 1) * (max_units + 1);
    value.assign(states, 0.0);
    choice.assign(states, -1);
    known.assign(states, false);
  }

  double phi(int units) const {
    const double x = units * h;
    return B * C * x * x + x * x * x;
  }

  std::size_t key(int len, int lb, int sum) const {
    return (static_cast<std::size_t>(len) * (max_units + 1) + lb) * (max_units + 1) + sum;
  }

  double solve(int len, int lb, int sum) {
    if (lb * len > sum) return std::numeric_limits<double>::infinity();
    if (len == 1) return phi(sum);
    const std::size_t k = key(len, lb, sum);
    if (known[k]) return value[k];
    double best = std::numeric_limits<double>::infinity();
    int best_v = -1;
    for (int v = lb; v * len <= sum; ++v) {
      const double cand = phi(v) + solve(len - 1, v, sum - v);
      if (cand < best) {
        best = cand;
        best_v = v;
      }
    }
    known[k] = true;
    value[k] = best;
    choice[k] = best_v;
    return best;
  }

  void reconstruct(int len, int lb, int sum, std::vector<int>& out) {
    while (len > 1) {
      const int v = choice[key(len, lb, sum)];
      out.push_back(v);
      lb = v;
      sum -= v;
      --len;
    }
    out.push_back(sum);
  }
};

struct SliceResult {
  double min_value = std::numeric_limits<double>::infinity();
  std::vector<int> head;  // units
  int tail_lb = 0, tail_sum = 0;
};

/// Enumerates nondecreasing integer heads of length k2 summing to A with every
/// entry <= cap = floor((res - A) / tail_len), closing each with the tail DP.
void enumerate_heads(int pos, int k2, int prev, int remaining, int cap, double head_f,
                     std::vector<int>& head, TailDp& dp, int tail_len, int tail_sum,
                     SliceResult& best) {
  if (pos == k2) {
    const double total = head_f + dp.solve(tail_len, std::max(head.back(), 0), tail_sum);
    if (total < best.min_value) {
      best.min_value = total;
      best.head = head;
      best.tail_lb = std::max(head.back(), 0);
      best.tail_sum = tail_sum;
    }
    return;
  }
  const int slots_after = k2 - pos - 1;
  // v <= remaining/(slots+1) keeps the head nondecreasing; v >= remaining -
  // slots_after*cap keeps the rest reachable under the tail bound.
  int lo = remaining - slots_after * cap;
  if (pos > 0) lo = std::max(lo, prev);
  int hi = std::min(cap, static_cast<int>(std::floor(static_cast<double>(remaining) / (slots_after + 1))));
  for (int v = lo; v <= hi; ++v) {
    head.push_back(v);
    enumerate_heads(pos + 1, k2, v, remaining - v, cap, head_f + dp.phi(v), head, dp,
                    tail_len, tail_sum, best);
    head.pop_back();
  }
}

AScanResult grid_scan(int N, int k2, double C, double B, int budget) {
  if (N > 80 || k2 > 4) throw BudgetExceeded("brute_min: grid mode is limited to N <= 80, k2 <= 4");
  if (budget < 2) throw BudgetExceeded("brute_min: resolution must be >= 2");

  AScanResult scan;
  scan.tol_grid = grid_tolerance(N, C, budget);
  if (C == 0.0) {
    scan.a_values = {0.0};
    scan.min_values = {0.0};
    scan.argmin_a = 0.0;
    scan.min_value = 0.0;
    scan.dichotomy = true;
    return scan;
  }

  const int res = budget;
  const double h = C / res;
  const int tail_len = N - k2;
  TailDp dp(tail_len, res, h, B, C);

  const int a_max_units = static_cast<int>(std::floor(static_cast<double>(k2) * res / N));
  double best = std::numeric_limits<double>::infinity();
  double best_a = 0.0;

  for (int A = 0; A <= a_max_units; ++A) {
    const int tail_sum = res - A;
    const int cap = tail_sum / tail_len;
    SliceResult slice;
    std::vector<int> head;
    enumerate_heads(0, k2, 0, A, cap, 0.0, head, dp, tail_len, tail_sum, slice);
    scan.a_values.push_back(A * h);
    scan.min_values.push_back(slice.min_value);
    if (slice.min_value < best) {
      best = slice.min_value;
      best_a = A * h;
    }
  }

  // a = k2 C / N forces the uniform sequence; evaluate that endpoint exactly.
  std::vector<double> uniform(N, C / N);
  const double fu = f_eval(uniform, B, C);
  scan.a_values.push_back(k2 * C / N);
  scan.min_values.push_back(fu);
  if (fu < best) {
    best = fu;
    best_a = k2 * C / N;
  }

  scan.min_value = best;
  scan.argmin_a = best_a;
  scan.dichotomy = best_a <= scan.tol_grid || best_a >= k2 * C / N - scan.tol_grid;
  return scan;
}

std::vector<double> random_feasible(Rng& rng, int N, int k2, double C, double a) {
  const int tail_len = N - k2;
  std::vector<double> head(k2, a / k2), tail(tail_len, (C - a) / tail_len);
  // randomize within blocks, preserving block sums
  for (int moves = 0; moves < 4 * N; ++moves) {
    const bool on_head = k2 > 1 && (rng.next_u64() & 1u);
    std::vector<double>& blk = on_head ? head : tail;
    const int m = static_cast<int>(blk.size());
    if (m < 2) continue;
    const int i = static_cast<int>(rng.next_u64() % m);
    const int j = static_cast<int>(rng.next_u64() % m);
    if (i == j) continue;
    const double d = (rng.uniform01() - 0.5) * C / N;
    blk[i] += d;
    blk[j] -= d;
  }
  std::sort(head.begin(), head.end());
  std::sort(tail.begin(), tail.end());
  // shrink spreads toward the block means until the blocks interleave
  const double hm = a / k2, tm = (C - a) / tail_len;
  int guard = 0;
  while ((head.back() > tail.front() || tail.front() < 0.0) && guard++ < 200) {
    for (double& x : head) x = hm + 0.8 * (x - hm);
    for (double& x : tail) x = tm + 0.8 * (x - tm);
  }
  std::vector<double> out;
  out.insert(out.end(), head.begin(), head.end());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

void polish(std::vector<double>& lam, int k2, double B, double C) {
  const int N = static_cast<int>(lam.size());
  const auto phi = [&](double x) { return B * C * x * x + x * x * x; };
  double step = C / 8.0;
  for (int round = 0; round < 40; ++round) {
    bool improved = false;
    for (int b = 0; b < 2; ++b) {
      const int lo = b == 0 ? 0 : k2;
      const int hi = b == 0 ? k2 : N;
      for (int i = lo; i < hi; ++i)
        for (int j = i + 1; j < hi; ++j) {
          for (const double d : {step, -step}) {
            std::vector<double> trial = lam;
            trial[i] += d;
            trial[j] -= d;
            std::sort(trial.begin() + lo, trial.begin() + hi);
            if (trial[k2] < trial[k2 - 1]) continue;  // blocks must interleave
            bool ok = true;
            for (int q = k2; q < N; ++q)
              if (trial[q] < -1e-15) ok = false;
            if (!ok) continue;
            double before = 0.0, after = 0.0;
            for (int q = 0; q < N; ++q) {
              before += phi(lam[q]);
              after += phi(trial[q]);
            }
            if (after < before - 1e-15) {
              lam = trial;
              improved = true;
            }
          }
        }
    }
    if (!improved) step /= 2.0;
    if (step < 1e-10 * (C + 1.0)) break;
  }
}

}  // namespace

AScanResult brute_min_scan(int N, int k2, double C, double B, int budget) {
  SeqProblem{N, k2, C, 0.0, B, std::nullopt}.validate();
  return grid_scan(N, k2, C, B, budget);
}

BruteResult brute_min(int N, int k2, double C, double B, OracleMode mode, int budget,
                      std::uint64_t seed) {
  SeqProblem{N, k2, C, 0.0, B, std::nullopt}.validate();
  BruteResult out;
  if (C == 0.0) {
    out.min_value = 0.0;
    out.argmin.assign(N, 0.0);
    out.argmin_a = 0.0;
    return out;
  }

  if (mode == OracleMode::grid) {
    if (N > 80 || k2 > 4) throw BudgetExceeded("brute_min: grid mode is limited to N <= 80, k2 <= 4");
    if (budget < 2) throw BudgetExceeded("brute_min: resolution must be >= 2");
    const int res = budget;
    const double h = C / res;
    const int tail_len = N - k2;
    TailDp dp(tail_len, res, h, B, C);
    const int a_max_units = static_cast<int>(std::floor(static_cast<double>(k2) * res / N));
    double best = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    std::vector<double> best_argmin;
    for (int A = 0; A <= a_max_units; ++A) {
      const int tail_sum = res - A;
      const int cap = tail_sum / tail_len;
      SliceResult slice;
      std::vector<int> head;
      enumerate_heads(0, k2, 0, A, cap, 0.0, head, dp, tail_len, tail_sum, slice);
      if (slice.min_value < best) {
        best = slice.min_value;
        best_a = A * h;
        best_argmin.clear();
        for (const int v : slice.head) best_argmin.push_back(v * h);
        std::vector<int> tail;
        dp.solve(tail_len, slice.tail_lb, slice.tail_sum);
        dp.reconstruct(tail_len, slice.tail_lb, slice.tail_sum, tail);
        for (const int v : tail) best_argmin.push_back(v * h);
      }
    }
    std::vector<double> uniform(N, C / N);
    const double fu = f_eval(uniform, B, C);
    if (fu < best) {
      best = fu;
      best_a = k2 * C / N;
      best_argmin = uniform;
    }
    out.min_value = best;
    out.argmin = best_argmin;
    out.argmin_a = best_a;
    return out;
  }

  // random mode: feasible sampling plus pairwise polish
  if (budget < 1) throw BudgetExceeded("brute_min: need at least one sample");
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_argmin;
  double best_a = 0.0;
  for (int sample = 0; sample < budget; ++sample) {
    Rng rng(mix_seed(seed, "brute-random", static_cast<std::uint64_t>(sample)));
    const double a = (sample == 0 ? 0.0 : rng.uniform01() * k2 * C / N);
    std::vector<double> lam = random_feasible(rng, N, k2, C, a);
    polish(lam, k2, B, C);
    const double f = f_eval(lam, B, C);
    if (f < best) {
      best = f;
      best_argmin = lam;
      best_a = a;
    }
  }
  out.min_value = best;
  out.argmin = best_argmin;
  out.argmin_a = best_a;
  return out;
}

Remark45 remark45_coefficient(int n) {
  if (n < 4) throw BadParams("remark45_coefficient: need n >= 4");
  Remark45 out;
  const double nn = n;
  out.value = 2.0 * (nn * nn - 8.0 * nn + 4.0) / (3.0 * nn * (nn - 1.0) * (nn + 2.0));
  out.positive = out.value > 0.0;
  return out;
}

double theorem12_B(int n) {
  // From the small-dimension display with the corrected beta cross-term sign.
  const double nn = n;
  return 2.0 * (nn - 10.0) / (3.0 * (nn - 1.0) * (nn + 2.0));
}

double theorem11_B_value(int n) {
  const double nn = n;
  return 2.0 * (nn * nn - 11.0 * nn + 4.0) / (3.0 * nn * (nn - 1.0) * (nn + 2.0));
}

int hypothesis_k2(int n) {
  if (n < 4) throw BadRange("hypothesis_k2: need n >= 4");
  if (n <= 5) return n - 2;
  if (n <= 7) return 1;
  if (n <= 10) return 2;
  return (n + 2) / 4;
}

std::vector<FTableRow> theorem_F_table(int n_lo, int n_hi) {
  if (n_lo < 4 || n_hi < n_lo) throw BadRange("theorem_F_table: need 4 <= n_lo <= n_hi");
  std::vector<FTableRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    FTableRow row;
    row.n = n;
    row.N = (n - 1) * (n + 2) / 2;
    row.k2 = hypothesis_k2(n);
    const double C = 1.0;
    row.B = n <= 5 ? theorem12_B(n) : theorem11_B_value(n);

    const auto candidates = candidate_points(row.N, row.k2, C, row.B);
    for (const CandidatePoint& p : candidates) row.candidate_f.push_back(p.f_value);
    const double f_uniform = candidates[0].f_value;
    const double f_spike = candidates[1].f_value;           // m = 1
    const double f_zero = candidates[row.k2].f_value;       // m = k2

    if (n <= 5) {
      row.F_zero_block = f_zero - f_uniform;
      row.F_spike = f_spike - f_uniform;
      row.branch = "theorem-1.2";
    } else {
      const double nn = n, N = row.N, k2 = row.k2;
      row.F_zero_block = k2 * C * C * C / (N * N * (N - k2)) *
                         ((2.0 * N - k2) / (N - k2) + (nn * nn - 11.0 * nn + 4.0) / (3.0 * nn));
      row.F_spike = 2.0 * (N - 1.0) * k2 * k2 * C * C * C / (N * (N - k2) * (N - k2)) *
                    ((nn * nn - 11.0 * nn + 4.0) * (N - k2) +
                     3.0 * nn * (3.0 * N - (N + 1.0) * k2)) /
                    (3.0 * nn * (nn - 1.0) * (nn + 2.0) * (N - k2));
      row.branch = n <= 7 ? "uniform-minimizer" : "candidate-minimizers";
    }
    row.verdict = row.F_zero_block > 0.0 && row.F_spike > 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace curvops
