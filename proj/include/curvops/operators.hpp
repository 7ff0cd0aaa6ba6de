#pragma once

#include <array>
#include <utility>
#include <vector>

#include "curvops/basis.hpp"
#include "curvops/curvature.hpp"

namespace curvops {

enum class OperatorKind { first, tilde, second };

/// Symmetric matrix of one of the three curvature operators in a declared
/// orthonormal basis. For kinds tilde/second the basis is s2_basis/s2_0_basis;
/// for kind first the basis is the wedge family { e_i ^ e_j : i<j } with
/// <e_i^e_j, e_k^e_l> = d_ik d_jl, kept implicit.
struct OperatorMatrix {
  OperatorKind kind = OperatorKind::second;
  int n = 0;
  int size = 0;
  std::vector<double> entries;  // row-major size x size
  Sym2Basis basis;              // empty for kind first

  double operator()(int a, int b) const {
    return entries[static_cast<std::size_t>(a) * size + b];
  }
  double& operator()(int a, int b) {
    return entries[static_cast<std::size_t>(a) * size + b];
  }

  double trace() const;
  double trace_sq() const;    // tr(M^2)
  double trace_cube() const;  // tr(M^3)
};

/// Curvature operator of the second kind on S_0^2: the bilinear-form assembly
/// entries[a][b] = sum R_ijkl (B_a)_jk (B_b)_il over s2_0_basis. This is the
/// normative definition; second_kind_action below realizes the vector form,
/// and the two agree for every valid curvature tensor.
OperatorMatrix op_second_kind(const CurvTensor& r);

/// Induced operator on all of S^2 in s2_basis; restricted to the trace-free
/// block it coincides with op_second_kind whenever S_0^2 is invariant
/// (Einstein tensors).
OperatorMatrix op_tilde(const CurvTensor& r);

/// Curvature operator of the first kind on 2-forms; auxiliary.
OperatorMatrix op_first_kind(const CurvTensor& r);

/// Vector form of the induced operator: (RS)_kl = sum_ij R_kijl S_ij.
Sym2 tilde_action(const CurvTensor& r, const Sym2& s);

/// Compression of tilde_action to trace-free tensors: project the argument
/// and the image onto S_0^2.
Sym2 second_kind_action(const CurvTensor& r, const Sym2& s);

/// Derivation action of a symmetric 2-tensor on a rank-4 tensor
/// (ST)_ijkl = sum_m S_im T_mjkl + S_jm T_imkl + S_km T_ijml + S_lm T_ijkm.
/// Cost scales with the number of nonzero entries of S.
CurvTensor apply_sym2(const Sym2& s, const CurvTensor& t);

/// Rank-2 overload: ST = S T + T S (matrix anticommutator).
Sym2 apply_sym2(const Sym2& s, const Sym2& t);

/// The two cubic contractions
///   alpha = R_tpsq T_tpkl T_sqkl,  beta = R_tspq T_tjpl T_sjql.
std::pair<double, double> alpha_beta(const CurvTensor& r, const CurvTensor& t);

/// First-Bianchi contraction identities: values of
///   (1) R_tspq T_tpkl T_sqkl   (= alpha/2)
///   (2) R_tpsq T_tkpl T_skql   (= alpha/4)
///   (3) R_pstq T_tjpl T_sjql   (= -alpha/4 + beta)
/// together with their relative residuals against the right-hand sides.
struct BianchiContractions {
  std::array<double, 3> values{};
  std::array<double, 3> expected{};
  std::array<double, 3> residuals{};
};

BianchiContractions bianchi_contraction_residuals(const CurvTensor& r, const CurvTensor& t);

/// Scalar invariants of one curvature tensor.
struct ScalarInvariants {
  double s = 0.0;
  double norm_R_sq = 0.0;
  double norm_W_sq = 0.0;
  double alpha = 0.0;  // alpha(R,R)
  double beta = 0.0;   // beta(R,R)
  double tr1 = 0.0;    // tr of op_second_kind
  double tr2 = 0.0;    // tr of its square
  double tr3 = 0.0;    // tr of its cube
};

ScalarInvariants scalar_invariants(const CurvTensor& r);

}  // namespace curvops
