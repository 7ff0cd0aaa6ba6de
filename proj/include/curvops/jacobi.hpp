#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvops/operators.hpp"

namespace curvops {

/// Dense symmetric eigendecomposition by cyclic Jacobi rotations.
/// Converges when off(A) <= 1e-13 ||A||_F; throws ConvergenceFailure with a
/// hash of the input after 100 sweeps. Bitwise-deterministic: fixed sweep
/// order, no workspace shared between calls.
struct EigenResult {
  std::vector<double> values;   // nondecreasing
  std::vector<double> vectors;  // row-major m x m, column a = eigenvector a
  int size = 0;

  double vec(int i, int a) const { return vectors[static_cast<std::size_t>(i) * size + a]; }
};

EigenResult jacobi_eigensolve(std::span<const double> matrix, int m);

/// Spectrum of an assembled operator: nondecreasing eigenvalues (ties keep the
/// original column order) and, when the matrix carries a Sym2 basis, the
/// eigentensors reconstituted in that basis. weyl_shifted holds
/// omega_a = lambda_a - s/(n(n-1)) once attached for an Einstein tensor.
struct Spectrum {
  OperatorKind kind = OperatorKind::second;
  int n = 0;
  std::vector<double> eigenvalues;
  std::vector<Sym2> eigentensors;
  std::optional<std::vector<double>> weyl_shifted;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double sum(int power = 1) const;
};

Spectrum spectrum(const OperatorMatrix& m);

/// Fills weyl_shifted from the scalar curvature; Einstein tensors satisfy
/// sum omega_a = 0.
void attach_weyl_shift(Spectrum& spec, double s);

/// delta-nonnegativity test value sum_{a<=[delta]} lambda_a +
/// (delta-[delta]) lambda_{[delta]+1}; holds iff the value is >= 0.
struct DeltaVerdict {
  double value = 0.0;
  bool holds = false;
};

DeltaVerdict delta_nonnegative(const Spectrum& spec, double delta);
DeltaVerdict delta_nonnegative(std::span<const double> nondecreasing, double delta);

}  // namespace curvops
