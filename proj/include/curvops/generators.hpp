#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "curvops/curvature.hpp"

namespace curvops {

/// Projection of an i.i.d. standard-normal rank-4 array onto the curvature
/// subspace; rotation-invariant over that subspace. Same (n, seed) gives a
/// bitwise-identical tensor.
CurvTensor random_curvature(int n, std::uint64_t seed);

/// Weyl part of random_curvature; nonzero with probability 1 for n >= 4.
/// Throws UnsupportedDim at n = 3 (the Weyl space is trivial there).
CurvTensor random_weyl(int n, std::uint64_t seed);

/// random_weyl + the constant-curvature part scaled so the result is Einstein
/// (E = 0) with scalar curvature exactly s_target.
CurvTensor random_einstein(int n, double s_target, std::uint64_t seed);

/// Flat space: the zero tensor.
CurvTensor flat(int n);

/// Round sphere of curvature kappa > 0: R_ijkl = kappa (d_ik d_jl - d_il d_jk),
/// i.e. kappa/2 times g ^o g. Scalar curvature n(n-1) kappa.
CurvTensor sphere(int n, double kappa);

/// S^p(kappa) x S^p(kappa), dimension n = 2p: block constant curvature on each
/// factor, mixed components zero. Einstein (Ric = (p-1) kappa g) but not of
/// constant curvature for p >= 2.
CurvTensor product_spheres(int p, double kappa);

struct ModelParams {
  std::optional<int> dim;
  std::optional<double> kappa;
  std::optional<int> p;
};

/// Name dispatch for the CLI: "flat", "sphere", "product_spheres".
CurvTensor model_space(const std::string& name, const ModelParams& params);

}  // namespace curvops
