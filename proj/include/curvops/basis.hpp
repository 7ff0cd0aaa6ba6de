#pragma once

#include <vector>

#include "curvops/sym2.hpp"

namespace curvops {

enum class BasisKind { full, tracefree };

/// Ordered orthonormal basis of S^2 (full) or S_0^2 (tracefree) under the
/// full-contraction inner product.
struct Sym2Basis {
  int n = 0;
  BasisKind kind = BasisKind::full;
  std::vector<Sym2> elements;

  int size() const { return static_cast<int>(elements.size()); }

  /// Max deviation of the Gram matrix from the identity.
  double gram_residual() const;
};

/// { (1/sqrt2) e_i (.) e_j : i<j lexicographic } then { (1/2) e_i (.) e_i }.
/// Size n(n+1)/2.
Sym2Basis s2_basis(int n);

/// Off-diagonal elements of s2_basis unchanged, then n-1 trace-free diagonal
/// elements obtained by Gram-Schmidt on { e_i x e_i - g/n : i = 0..n-2 } in
/// index order. Size (n-1)(n+2)/2.
Sym2Basis s2_0_basis(int n);

}  // namespace curvops
