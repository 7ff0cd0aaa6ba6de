#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "curvops/generators.hpp"
#include "curvops/serialize.hpp"

using namespace curvops;

TEST_CASE("tensor json round-trip preserves every entry") {
  const CurvTensor r = random_curvature(4, 21);
  const CurvTensor back = tensor_from_json(tensor_to_json(r));
  CHECK(back.dim() == 4);
  CHECK((back - r).max_abs() == 0.0);  // bit-exact through shortest-round-trip decimals
}

TEST_CASE("tensor json rejects malformed input") {
  CHECK_THROWS_AS(tensor_from_json("not json"), Error);
  CHECK_THROWS_AS(tensor_from_json("{\"n\": 4}"), Error);
  CHECK_THROWS_AS(tensor_from_json("{\"n\": 4, \"entries\": [[[[1]]]]}"), SizeMismatch);

  // a valid shape that is not an algebraic curvature tensor
  CurvTensor bad(3);
  bad(0, 0, 0, 0) = 1.0;
  CHECK_THROWS_AS(tensor_from_json(tensor_to_json(bad)), SymmetryViolation);
}

TEST_CASE("file io") {
  const std::string path = "serialize_test_tensor.json";
  const CurvTensor r = sphere(4, 1.0);
  save_tensor(path, r);
  const CurvTensor back = load_tensor(path);
  CHECK((back - r).max_abs() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("fmt_double is stable and locale-free") {
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(-12.0) == "-12");
  CHECK(fmt_double(1e-9) == "1e-09");
}
