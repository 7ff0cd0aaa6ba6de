#include "curvops/generators.hpp"

#include "curvops/rng.hpp"

namespace curvops {

CurvTensor random_curvature(int n, std::uint64_t seed) {
  CurvTensor raw(n);
  Rng rng(seed);
  for (double& v : raw.data()) v = rng.gaussian();
  CurvTensor r = project_to_curvature(raw);
  // The projection guarantees validity at roughly machine precision.
  return make_curvature(n, r.data(), kConstructionTol);
}

CurvTensor random_weyl(int n, std::uint64_t seed) {
  if (n < 4) throw UnsupportedDim("random_weyl: Weyl space is trivial for n < 4");
  return decompose(random_curvature(n, seed)).weyl;
}

CurvTensor random_einstein(int n, double s_target, std::uint64_t seed) {
  const Sym2 g = Sym2::identity(n);
  CurvTensor r = random_weyl(n, seed);
  r += (s_target / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g);
  return r;
}

CurvTensor flat(int n) { return CurvTensor(n); }

CurvTensor sphere(int n, double kappa) {
  if (kappa <= 0.0) throw BadParams("sphere: kappa must be positive");
  CurvTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      r(i, j, i, j) = kappa;
      r(i, j, j, i) = -kappa;
    }
  return r;
}

CurvTensor product_spheres(int p, double kappa) {
  if (p < 2) throw BadParams("product_spheres: factor dimension p must be >= 2");
  if (kappa <= 0.0) throw BadParams("product_spheres: kappa must be positive");
  const int n = 2 * p;
  CurvTensor r(n);
  const auto factor = [p](int i) { return i < p ? 0 : 1; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || factor(i) != factor(j)) continue;
      r(i, j, i, j) = kappa;
      r(i, j, j, i) = -kappa;
    }
  return r;
}

CurvTensor model_space(const std::string& name, const ModelParams& params) {
  if (name == "flat") {
    if (!params.dim) throw BadParams("flat: missing dimension");
    return flat(*params.dim);
  }
  if (name == "sphere") {
    if (!params.dim) throw BadParams("sphere: missing dimension");
    return sphere(*params.dim, params.kappa.value_or(1.0));
  }
  if (name == "product_spheres") {
    if (!params.p) throw BadParams("product_spheres: missing factor dimension p");
    return product_spheres(*params.p, params.kappa.value_or(1.0));
  }
  throw UnknownModel("model_space: unknown model '" + name + "'");
}

}  // namespace curvops
