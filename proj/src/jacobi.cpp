#include "curvops/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <sstream>

namespace curvops {

namespace {

std::uint64_t fnv1a_hash(std::span<const double> data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const double v : data) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffull;
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

double off_diagonal_norm(const std::vector<double>& a, int m) {
  double s = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) s += a[static_cast<std::size_t>(p) * m + q] * a[static_cast<std::size_t>(p) * m + q];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenResult jacobi_eigensolve(std::span<const double> matrix, int m) {
  if (static_cast<int>(matrix.size()) != m * m) throw SizeMismatch("jacobi_eigensolve: bad matrix size");
  std::vector<double> a(matrix.begin(), matrix.end());
  std::vector<double> v(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * m + i] = 1.0;

  double norm = 0.0;
  for (const double x : a) norm += x * x;
  norm = std::sqrt(norm);
  const double target = 1e-13 * norm;

  const auto at = [&](std::vector<double>& mat, int i, int j) -> double& {
    return mat[static_cast<std::size_t>(i) * m + j];
  };

  constexpr int kMaxSweeps = 100;
  bool converged = (m <= 1) || off_diagonal_norm(a, m) <= target;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = at(a, p, p), aqq = at(a, q, q);
        at(a, p, p) = app - t * apq;
        at(a, q, q) = aqq + t * apq;
        at(a, p, q) = 0.0;
        at(a, q, p) = 0.0;
        for (int i = 0; i < m; ++i) {
          if (i != p && i != q) {
            const double aip = at(a, i, p), aiq = at(a, i, q);
            at(a, i, p) = aip - s * (aiq + tau * aip);
            at(a, i, q) = aiq + s * (aip - tau * aiq);
            at(a, p, i) = at(a, i, p);
            at(a, q, i) = at(a, i, q);
          }
          const double vip = at(v, i, p), viq = at(v, i, q);
          at(v, i, p) = vip - s * (viq + tau * vip);
          at(v, i, q) = viq + s * (vip - tau * viq);
        }
      }
    converged = off_diagonal_norm(a, m) <= target;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "jacobi_eigensolve: no convergence in " << kMaxSweeps
        << " sweeps (matrix hash " << std::hex << fnv1a_hash(matrix) << ")";
    throw ConvergenceFailure(msg.str());
  }

  // Nondecreasing order; a stable sort keeps the original column order on
  // exactly degenerate eigenvalues (spheres are maximally degenerate).
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return a[static_cast<std::size_t>(x) * m + x] < a[static_cast<std::size_t>(y) * m + y];
  });

  EigenResult out;
  out.size = m;
  out.values.resize(m);
  out.vectors.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int col = 0; col < m; ++col) {
    out.values[col] = a[static_cast<std::size_t>(idx[col]) * m + idx[col]];
    for (int i = 0; i < m; ++i)
      out.vectors[static_cast<std::size_t>(i) * m + col] = v[static_cast<std::size_t>(i) * m + idx[col]];
  }
  return out;
}

double Spectrum::sum(int power) const {
  double s = 0.0;
  for (const double l : eigenvalues) {
    double t = l;
    for (int p = 1; p < power; ++p) t *= l;
    s += t;
  }
  return s;
}

Spectrum spectrum(const OperatorMatrix& m) {
  const EigenResult eig = jacobi_eigensolve(m.entries, m.size);
  Spectrum out;
  out.kind = m.kind;
  out.n = m.n;
  out.eigenvalues = eig.values;
  if (!m.basis.elements.empty()) {
    out.eigentensors.reserve(m.size);
    for (int a = 0; a < m.size; ++a) {
      Sym2 s(m.n);
      for (int b = 0; b < m.size; ++b) s += eig.vec(b, a) * m.basis.elements[b];
      out.eigentensors.push_back(std::move(s));
    }
  }
  return out;
}

void attach_weyl_shift(Spectrum& spec, double s) {
  const double shift = s / (static_cast<double>(spec.n) * (spec.n - 1));
  std::vector<double> omega(spec.eigenvalues.size());
  for (std::size_t i = 0; i < omega.size(); ++i) omega[i] = spec.eigenvalues[i] - shift;
  spec.weyl_shifted = std::move(omega);
}

DeltaVerdict delta_nonnegative(std::span<const double> nondecreasing, double delta) {
  const int m = static_cast<int>(nondecreasing.size());
  if (delta < 1.0) throw BadDelta("delta_nonnegative: delta must be >= 1");
  const int k = static_cast<int>(std::floor(delta));
  const double frac = delta - k;
  if (k > m || (frac > 0.0 && k + 1 > m)) throw BadDelta("delta_nonnegative: index out of range");
  double value = 0.0;
  for (int i = 0; i < k; ++i) value += nondecreasing[i];
  if (frac > 0.0) value += frac * nondecreasing[k];
  return {value, value >= 0.0};
}

DeltaVerdict delta_nonnegative(const Spectrum& spec, double delta) {
  return delta_nonnegative(std::span<const double>(spec.eigenvalues), delta);
}

}  // namespace curvops
