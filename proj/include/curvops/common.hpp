#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace curvops {

inline constexpr const char* kToolName = "curvops";
inline constexpr const char* kVersion = "1.0.0";

// Default tolerances. Identity checks chain three contractions in double
// precision, so their residual floor sits a few digits above machine eps;
// construction residuals are checked right after an orthogonal projection
// and can be held much tighter.
inline constexpr double kIdentityTol = 1e-9;
inline constexpr double kConstructionTol = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimMismatch : Error { using Error::Error; };
struct SymmetryViolation : Error { using Error::Error; };
struct BianchiViolation : Error { using Error::Error; };
struct UnsupportedDim : Error { using Error::Error; };
struct UnknownModel : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct BadDelta : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct NotEinstein : Error { using Error::Error; };
struct NotWeyl : Error { using Error::Error; };
struct ZeroWeyl : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct BadPattern : Error { using Error::Error; };
struct WrongDim : Error { using Error::Error; };
struct OptFailure : Error { using Error::Error; };
struct BadProblem : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct BadRange : Error { using Error::Error; };

/// Relative residual |lhs-rhs| / (1 + max(|lhs|,|rhs|)).
/// The +1 keeps the measure meaningful when both sides vanish.
inline double rel_residual(double lhs, double rhs) {
  const double m = std::max(std::abs(lhs), std::abs(rhs));
  return std::abs(lhs - rhs) / (1.0 + m);
}

}  // namespace curvops
