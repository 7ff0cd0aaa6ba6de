#include "curvops/curvature.hpp"

#include <sstream>

namespace curvops {

CurvTensor::CurvTensor(int n)
    : n_(n), a_(static_cast<std::size_t>(n) * n * n * n, 0.0) {
  if (n < 3) throw UnsupportedDim("CurvTensor: need n >= 3");
}

double CurvTensor::inner(const CurvTensor& o) const {
  if (o.n_ != n_) throw DimMismatch("CurvTensor::inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) s += a_[k] * o.a_[k];
  return s;
}

double CurvTensor::max_abs() const {
  double m = 0.0;
  for (const double v : a_) m = std::max(m, std::abs(v));
  return m;
}

CurvTensor& CurvTensor::operator+=(const CurvTensor& o) {
  if (o.n_ != n_) throw DimMismatch("CurvTensor::operator+=: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

CurvTensor& CurvTensor::operator-=(const CurvTensor& o) {
  if (o.n_ != n_) throw DimMismatch("CurvTensor::operator-=: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

CurvTensor& CurvTensor::operator*=(double c) {
  for (double& v : a_) v *= c;
  return *this;
}

SymmetryResiduals symmetry_residuals(const CurvTensor& r) {
  const int n = r.dim();
  SymmetryResiduals out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = r(i, j, k, l);
          out.scale = std::max(out.scale, std::abs(v));
          out.antisym_first = std::max(out.antisym_first, std::abs(v + r(j, i, k, l)));
          out.antisym_second = std::max(out.antisym_second, std::abs(v + r(i, j, l, k)));
          out.pair_exchange = std::max(out.pair_exchange, std::abs(v - r(k, l, i, j)));
          out.bianchi = std::max(out.bianchi, std::abs(v + r(i, k, l, j) + r(i, l, j, k)));
        }
  return out;
}

CurvTensor make_curvature(int n, std::span<const double> raw, double tol) {
  CurvTensor r(n);
  if (raw.size() != r.data().size()) {
    std::ostringstream msg;
    msg << "make_curvature: expected " << r.data().size() << " entries, got " << raw.size();
    throw DimMismatch(msg.str());
  }
  std::copy(raw.begin(), raw.end(), r.data().begin());

  const SymmetryResiduals res = symmetry_residuals(r);
  const double bound = tol * (1.0 + res.scale);
  const auto fail = [&](const char* what, double v) {
    std::ostringstream msg;
    msg << "make_curvature: " << what << " residual " << v << " exceeds " << bound;
    return msg.str();
  };
  if (res.antisym_first > bound) throw SymmetryViolation(fail("antisymmetry in (i,j)", res.antisym_first));
  if (res.antisym_second > bound) throw SymmetryViolation(fail("antisymmetry in (k,l)", res.antisym_second));
  if (res.pair_exchange > bound) throw SymmetryViolation(fail("pair exchange", res.pair_exchange));
  if (res.bianchi > bound) throw BianchiViolation(fail("first Bianchi", res.bianchi));
  return r;
}

CurvTensor project_to_curvature(const CurvTensor& raw) {
  const int n = raw.dim();
  CurvTensor sym(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double t = raw(i, j, k, l) - raw(j, i, k, l) - raw(i, j, l, k) + raw(j, i, l, k);
          const double u = raw(k, l, i, j) - raw(l, k, i, j) - raw(k, l, j, i) + raw(l, k, j, i);
          sym(i, j, k, l) = (t + u) / 8.0;
        }
  CurvTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double b = (sym(i, j, k, l) + sym(i, k, l, j) + sym(i, l, j, k)) / 3.0;
          out(i, j, k, l) = sym(i, j, k, l) - b;
        }
  return out;
}

CurvTensor kulkarni_nomizu(const Sym2& a, const Sym2& b) {
  const int n = a.dim();
  if (b.dim() != n) throw DimMismatch("kulkarni_nomizu: dimension mismatch");
  CurvTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          r(i, j, k, l) = a(i, k) * b(j, l) + a(j, l) * b(i, k)
                        - a(i, l) * b(j, k) - a(j, k) * b(i, l);
  return r;
}

Sym2 ricci(const CurvTensor& r) {
  const int n = r.dim();
  Sym2 ric(n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r(i, j, i, l);
      ric(j, l) = s;
    }
  return ric;
}

double scalar_curvature(const CurvTensor& r) { return ricci(r).trace(); }

DecomposedCurvature decompose(const CurvTensor& r) {
  const int n = r.dim();
  DecomposedCurvature d;
  d.ricci = ricci(r);
  d.scalar = d.ricci.trace();
  d.traceless_ricci = d.ricci.trace_free();

  const Sym2 g = Sym2::identity(n);
  CurvTensor w = r;
  w -= (1.0 / (n - 2)) * kulkarni_nomizu(d.traceless_ricci, g);
  w -= (d.scalar / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  if (n == 3) {
    // The Weyl space is trivial in dimension 3; any numerical remainder is
    // pure roundoff.
    w = CurvTensor(3);
  }
  d.weyl = std::move(w);
  return d;
}

CurvTensor reassemble(const DecomposedCurvature& d) {
  const int n = d.weyl.dim();
  const Sym2 g = Sym2::identity(n);
  CurvTensor r = d.weyl;
  r += (1.0 / (n - 2)) * kulkarni_nomizu(d.traceless_ricci, g);
  r += (d.scalar / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  return r;
}

bool is_einstein(const DecomposedCurvature& d, double tol) {
  return d.traceless_ricci.norm() <= tol * (1.0 + d.ricci.norm());
}

}  // namespace curvops
