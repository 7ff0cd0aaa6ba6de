#include "curvops/operators.hpp"

namespace curvops {

namespace {

struct SparseEntry {
  int row, col;
  double value;
};

std::vector<SparseEntry> nonzeros(const Sym2& s) {
  std::vector<SparseEntry> out;
  const int n = s.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s(i, j) != 0.0) out.push_back({i, j, s(i, j)});
  return out;
}

/// F(S)_il = sum_jk R_ijkl S_jk, the bilinear-form contraction against one
/// basis element. Cost scales with nnz(S).
Sym2 form_contraction(const CurvTensor& r, const Sym2& s) {
  const int n = r.dim();
  Sym2 f(n);
  for (const auto& [j, k, v] : nonzeros(s))
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) f(i, l) += r(i, j, k, l) * v;
  return f;
}

OperatorMatrix assemble_on_basis(const CurvTensor& r, Sym2Basis basis, OperatorKind kind) {
  const int m = basis.size();
  OperatorMatrix op;
  op.kind = kind;
  op.n = r.dim();
  op.size = m;
  op.entries.assign(static_cast<std::size_t>(m) * m, 0.0);

  std::vector<Sym2> f;
  f.reserve(m);
  for (const Sym2& b : basis.elements) f.push_back(form_contraction(r, b));

  // The form is symmetric by the pair-exchange symmetry of R; assembling the
  // upper triangle and mirroring keeps the matrix exactly symmetric.
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      const double v = f[a].inner(basis.elements[b]);
      op(a, b) = v;
      op(b, a) = v;
    }
  op.basis = std::move(basis);
  return op;
}

}  // namespace

double OperatorMatrix::trace() const {
  double t = 0.0;
  for (int a = 0; a < size; ++a) t += (*this)(a, a);
  return t;
}

double OperatorMatrix::trace_sq() const {
  double t = 0.0;
  for (const double v : entries) t += v * v;
  return t;
}

double OperatorMatrix::trace_cube() const {
  double t = 0.0;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      double row = 0.0;
      for (int c = 0; c < size; ++c) row += (*this)(b, c) * (*this)(c, a);
      t += (*this)(a, b) * row;
    }
  return t;
}

OperatorMatrix op_second_kind(const CurvTensor& r) {
  return assemble_on_basis(r, s2_0_basis(r.dim()), OperatorKind::second);
}

OperatorMatrix op_tilde(const CurvTensor& r) {
  return assemble_on_basis(r, s2_basis(r.dim()), OperatorKind::tilde);
}

OperatorMatrix op_first_kind(const CurvTensor& r) {
  const int n = r.dim();
  OperatorMatrix op;
  op.kind = OperatorKind::first;
  op.n = n;
  op.size = n * (n - 1) / 2;
  op.entries.assign(static_cast<std::size_t>(op.size) * op.size, 0.0);
  int a = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++a) {
      int b = 0;
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l, ++b) op(a, b) = r(i, j, k, l);
    }
  return op;
}

Sym2 tilde_action(const CurvTensor& r, const Sym2& s) {
  const int n = r.dim();
  if (s.dim() != n) throw DimMismatch("tilde_action: dimension mismatch");
  Sym2 out(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += r(k, i, j, l) * s(i, j);
      out(k, l) = acc;
    }
  return out;
}

Sym2 second_kind_action(const CurvTensor& r, const Sym2& s) {
  return tilde_action(r, s.trace_free()).trace_free();
}

CurvTensor apply_sym2(const Sym2& s, const CurvTensor& t) {
  const int n = s.dim();
  if (t.dim() != n) throw DimMismatch("apply_sym2: dimension mismatch");
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      if (s(i, m) != 0.0) rows[i].push_back({m, s(i, m)});

  CurvTensor out(n);
  const double* src = t.data().data();
  double* dst = out.data().data();
  const std::size_t n1 = n, n2 = n1 * n, n3 = n2 * n;

  // slot 1: out[i,:,:,:] += v T[m,:,:,:]
  for (int i = 0; i < n; ++i)
    for (const auto& [m, v] : rows[i]) {
      const double* a = src + m * n3;
      double* b = dst + i * n3;
      for (std::size_t x = 0; x < n3; ++x) b[x] += v * a[x];
    }
  // slot 2: out[i,j,:,:] += v T[i,m,:,:]
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [m, v] : rows[j]) {
        const double* a = src + i * n3 + m * n2;
        double* b = dst + i * n3 + j * n2;
        for (std::size_t x = 0; x < n2; ++x) b[x] += v * a[x];
      }
  // slot 3: out[i,j,k,:] += v T[i,j,m,:]
  for (std::size_t ij = 0; ij < n2; ++ij)
    for (int k = 0; k < n; ++k)
      for (const auto& [m, v] : rows[k]) {
        const double* a = src + ij * n2 + m * n1;
        double* b = dst + ij * n2 + k * n1;
        for (std::size_t x = 0; x < n1; ++x) b[x] += v * a[x];
      }
  // slot 4: out[i,j,k,l] += v T[i,j,k,m]
  for (std::size_t ijk = 0; ijk < n2 * n; ++ijk) {
    const double* a = src + ijk * n1;
    double* b = dst + ijk * n1;
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (const auto& [m, v] : rows[l]) acc += v * a[m];
      b[l] += acc;
    }
  }
  return out;
}

Sym2 apply_sym2(const Sym2& s, const Sym2& t) {
  const int n = s.dim();
  if (t.dim() != n) throw DimMismatch("apply_sym2: dimension mismatch");
  Sym2 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += s(i, m) * t(m, j) + s(j, m) * t(i, m);
      out(i, j) = acc;
    }
  return out;
}

std::pair<double, double> alpha_beta(const CurvTensor& r, const CurvTensor& t) {
  const int n = r.dim();
  if (t.dim() != n) throw DimMismatch("alpha_beta: dimension mismatch");
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  const double* rd = r.data().data();
  const double* td = t.data().data();

  // alpha = R_tpsq T_tpkl T_sqkl. With pairs flattened, R and T are n^2 x n^2
  // matrices in their natural layout; A = R^T T, alpha = <A, T>.
  std::vector<double> acc(n2 * n2, 0.0);
  for (std::size_t tp = 0; tp < n2; ++tp) {
    const double* rrow = rd + tp * n2;
    const double* trow = td + tp * n2;
    for (std::size_t sq = 0; sq < n2; ++sq) {
      const double c = rrow[sq];
      if (c == 0.0) continue;
      double* arow = acc.data() + sq * n2;
      for (std::size_t kl = 0; kl < n2; ++kl) arow[kl] += c * trow[kl];
    }
  }
  double alpha = 0.0;
  for (std::size_t x = 0; x < n2 * n2; ++x) alpha += acc[x] * td[x];

  // beta = R_tspq T_tjpl T_sjql. Permute T into P[(t,p)][(j,l)] = T_tjpl,
  // form V = P P^T, then contract V[(t,p)][(s,q)] against R_tspq.
  std::vector<double> p(n2 * n2);
  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < n; ++b)
        for (int l = 0; l < n; ++l)
          p[((static_cast<std::size_t>(a) * n + b) * n + j) * n + l] = t(a, j, b, l);
  std::vector<double> v(n2 * n2);
  for (std::size_t x = 0; x < n2; ++x)
    for (std::size_t y = x; y < n2; ++y) {
      const double* px = p.data() + x * n2;
      const double* py = p.data() + y * n2;
      double dot = 0.0;
      for (std::size_t z = 0; z < n2; ++z) dot += px[z] * py[z];
      v[x * n2 + y] = dot;
      v[y * n2 + x] = dot;
    }
  double beta = 0.0;
  for (int tt = 0; tt < n; ++tt)
    for (int ss = 0; ss < n; ++ss)
      for (int pp = 0; pp < n; ++pp)
        for (int qq = 0; qq < n; ++qq)
          beta += r(tt, ss, pp, qq) *
                  v[(static_cast<std::size_t>(tt) * n + pp) * n2 + static_cast<std::size_t>(ss) * n + qq];
  return {alpha, beta};
}

BianchiContractions bianchi_contraction_residuals(const CurvTensor& r, const CurvTensor& t) {
  const int n = r.dim();
  if (t.dim() != n) throw DimMismatch("bianchi_contraction_residuals: dimension mismatch");
  const auto [alpha, beta] = alpha_beta(r, t);

  // Deliberately plain summation loops, independent of the alpha/beta path.
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double m1 = 0.0, m2 = 0.0, m3 = 0.0;
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              m1 += t(a, c, k, l) * t(b, d, k, l);  // T_tpkl T_sqkl at (t,s,p,q)=(a,b,c,d)
              m2 += t(a, k, c, l) * t(b, k, d, l);  // T_tkpl T_skql
              m3 += t(c, k, a, l) * t(b, k, d, l);  // T_tjpl T_sjql at (p,s,t,q)=(a,b,c,d)
            }
          c1 += r(a, b, c, d) * m1;  // R_tspq T_tpkl T_sqkl
          c2 += r(a, c, b, d) * m2;  // R_tpsq T_tkpl T_skql
          c3 += r(a, b, c, d) * m3;  // R_pstq T_tjpl T_sjql
        }

  BianchiContractions out;
  out.values = {c1, c2, c3};
  out.expected = {alpha / 2.0, alpha / 4.0, -alpha / 4.0 + beta};
  for (int i = 0; i < 3; ++i) out.residuals[i] = rel_residual(out.values[i], out.expected[i]);
  return out;
}

ScalarInvariants scalar_invariants(const CurvTensor& r) {
  ScalarInvariants inv;
  const DecomposedCurvature d = decompose(r);
  inv.s = d.scalar;
  inv.norm_R_sq = r.norm_sq();
  inv.norm_W_sq = d.weyl.norm_sq();
  const auto [a, b] = alpha_beta(r, r);
  inv.alpha = a;
  inv.beta = b;
  const OperatorMatrix m = op_second_kind(r);
  inv.tr1 = m.trace();
  inv.tr2 = m.trace_sq();
  inv.tr3 = m.trace_cube();
  return inv;
}

}  // namespace curvops
