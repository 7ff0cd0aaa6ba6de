#pragma once

#include <string>

#include "curvops/curvature.hpp"
#include "curvops/jacobi.hpp"

namespace curvops {

/// Tensor wire format: {"n": int, "entries": nested arrays in row-major
/// index order i,j,k,l}.
std::string tensor_to_json(const CurvTensor& r);

/// Parses and validates through make_curvature.
CurvTensor tensor_from_json(const std::string& text, double tol = kConstructionTol);

void save_tensor(const std::string& path, const CurvTensor& r);
CurvTensor load_tensor(const std::string& path, double tol = kConstructionTol);

/// Shortest-exact decimal form used by every CSV writer; fixed across
/// platforms for byte-identical reports.
std::string fmt_double(double v);

}  // namespace curvops
