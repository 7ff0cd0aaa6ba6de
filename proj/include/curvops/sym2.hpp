#pragma once

#include <vector>

#include "curvops/common.hpp"

namespace curvops {

/// Symmetric 2-tensor on an n-dimensional Euclidean space, stored dense
/// row-major in the orthonormal frame (metric = identity). The inner product
/// is the full contraction <A,B> = sum_ij A_ij B_ij.
class Sym2 {
 public:
  Sym2() = default;
  explicit Sym2(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Sym2 identity(int n) {
    Sym2 g(n);
    for (int i = 0; i < n; ++i) g(i, i) = 1.0;
    return g;
  }

  /// e_i (.) e_j = e_i x e_j + e_j x e_i (unnormalized symmetric product).
  static Sym2 sym_dyad(int n, int i, int j) {
    Sym2 s(n);
    s(i, j) += 1.0;
    s(j, i) += 1.0;
    return s;
  }

  int dim() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double inner(const Sym2& o) const {
    if (o.n_ != n_) throw DimMismatch("Sym2::inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * o.a_[k];
    return s;
  }

  double norm_sq() const { return inner(*this); }
  double norm() const { return std::sqrt(norm_sq()); }

  double max_abs() const {
    double m = 0.0;
    for (const double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Trace-free part A - (tr A / n) g.
  Sym2 trace_free() const {
    Sym2 out = *this;
    const double t = trace() / n_;
    for (int i = 0; i < n_; ++i) out(i, i) -= t;
    return out;
  }

  double symmetry_residual() const {
    double m = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
  }

  Sym2& operator+=(const Sym2& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Sym2& operator-=(const Sym2& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Sym2& operator*=(double c) {
    for (double& v : a_) v *= c;
    return *this;
  }

  friend Sym2 operator+(Sym2 a, const Sym2& b) { return a += b; }
  friend Sym2 operator-(Sym2 a, const Sym2& b) { return a -= b; }
  friend Sym2 operator*(double c, Sym2 a) { return a *= c; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

}  // namespace curvops
