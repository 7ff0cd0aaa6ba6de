#include "curvops/basis.hpp"

#include <cmath>

namespace curvops {

double Sym2Basis::gram_residual() const {
  double worst = 0.0;
  const int m = size();
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const double g = elements[a].inner(elements[b]);
      worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

namespace {

void append_offdiagonal(Sym2Basis& basis) {
  const int n = basis.n;
  const double c = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) basis.elements.push_back(c * Sym2::sym_dyad(n, i, j));
}

}  // namespace

Sym2Basis s2_basis(int n) {
  if (n < 2) throw UnsupportedDim("s2_basis: need n >= 2");
  Sym2Basis basis{n, BasisKind::full, {}};
  append_offdiagonal(basis);
  for (int i = 0; i < n; ++i) basis.elements.push_back(0.5 * Sym2::sym_dyad(n, i, i));
  return basis;
}

Sym2Basis s2_0_basis(int n) {
  if (n < 2) throw UnsupportedDim("s2_0_basis: need n >= 2");
  Sym2Basis basis{n, BasisKind::tracefree, {}};
  append_offdiagonal(basis);

  const Sym2 g = Sym2::identity(n);
  std::vector<Sym2> diag;
  for (int i = 0; i + 1 < n; ++i) {
    Sym2 v = Sym2::sym_dyad(n, i, i);
    v *= 0.5;                 // e_i x e_i
    v -= (1.0 / n) * g;       // remove the trace
    for (const Sym2& u : diag) v -= v.inner(u) * u;
    v *= 1.0 / v.norm();
    diag.push_back(std::move(v));
  }
  for (Sym2& v : diag) basis.elements.push_back(std::move(v));
  return basis;
}

}  // namespace curvops
