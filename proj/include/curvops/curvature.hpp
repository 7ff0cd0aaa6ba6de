#pragma once

#include <span>
#include <vector>

#include "curvops/common.hpp"
#include "curvops/sym2.hpp"

namespace curvops {

/// Algebraic curvature tensor: dense rank-4 array R_ijkl over an n-dimensional
/// Euclidean space in an orthonormal frame. A valid tensor satisfies
///   R_ijkl = -R_jikl = -R_ijlk = R_klij
/// and the first Bianchi identity R_ijkl + R_iklj + R_iljk = 0.
/// The class itself does not enforce the symmetries; construction goes through
/// make_curvature (validation) or project_to_curvature (projection).
class CurvTensor {
 public:
  CurvTensor() = default;
  explicit CurvTensor(int n);

  int dim() const { return n_; }

  double operator()(int i, int j, int k, int l) const {
    return a_[static_cast<std::size_t>(((i * n_ + j) * n_ + k)) * n_ + l];
  }
  double& operator()(int i, int j, int k, int l) {
    return a_[static_cast<std::size_t>(((i * n_ + j) * n_ + k)) * n_ + l];
  }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  double inner(const CurvTensor& o) const;
  double norm_sq() const { return inner(*this); }
  double norm() const { return std::sqrt(norm_sq()); }
  double max_abs() const;

  CurvTensor& operator+=(const CurvTensor& o);
  CurvTensor& operator-=(const CurvTensor& o);
  CurvTensor& operator*=(double c);
  friend CurvTensor operator+(CurvTensor a, const CurvTensor& b) { return a += b; }
  friend CurvTensor operator-(CurvTensor a, const CurvTensor& b) { return a -= b; }
  friend CurvTensor operator*(double c, CurvTensor a) { return a *= c; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Max-abs residual of each symmetry class, plus the max-abs entry for
/// relative scaling.
struct SymmetryResiduals {
  double antisym_first = 0.0;   // R_ijkl + R_jikl
  double antisym_second = 0.0;  // R_ijkl + R_ijlk
  double pair_exchange = 0.0;   // R_ijkl - R_klij
  double bianchi = 0.0;         // R_ijkl + R_iklj + R_iljk
  double scale = 0.0;           // max |R_ijkl|
};

SymmetryResiduals symmetry_residuals(const CurvTensor& r);

/// Validates a raw n^4 array as an algebraic curvature tensor. All residuals
/// must stay below tol*(1 + max|raw|); pair symmetries are checked before the
/// Bianchi identity, so a tensor violating both reports SymmetryViolation.
CurvTensor make_curvature(int n, std::span<const double> raw,
                          double tol = kConstructionTol);

/// Orthogonal projection of an arbitrary rank-4 array onto the subspace of
/// algebraic curvature tensors: antisymmetrize both index pairs, symmetrize
/// under pair exchange, then subtract the totally antisymmetric component
/// b(R)_ijkl = (R_ijkl + R_iklj + R_iljk)/3 that violates first Bianchi.
CurvTensor project_to_curvature(const CurvTensor& raw);

/// Kulkarni-Nomizu product:
/// (A ^o B)_ijkl = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il.
CurvTensor kulkarni_nomizu(const Sym2& a, const Sym2& b);

/// Ric_jl = sum_i R_ijil.
Sym2 ricci(const CurvTensor& r);

/// Scalar curvature s = tr Ric.
double scalar_curvature(const CurvTensor& r);

/// Irreducible pieces of the curvature decomposition
///   R = W + E ^o g / (n-2) + s (g ^o g) / (2n(n-1)),
/// with E = Ric - (s/n) g trace-free.
struct DecomposedCurvature {
  CurvTensor weyl;
  Sym2 traceless_ricci;  // E
  double scalar = 0.0;   // s
  Sym2 ricci;
};

DecomposedCurvature decompose(const CurvTensor& r);
CurvTensor reassemble(const DecomposedCurvature& d);

/// Einstein test: |E| <= tol * (1 + |Ric|).
bool is_einstein(const DecomposedCurvature& d, double tol = kIdentityTol);

}  // namespace curvops
