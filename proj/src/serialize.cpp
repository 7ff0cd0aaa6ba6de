#include "curvops/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace curvops {

std::string tensor_to_json(const CurvTensor& r) {
  const int n = r.dim();
  nlohmann::ordered_json j;
  j["n"] = n;
  nlohmann::ordered_json outer = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::ordered_json ji = nlohmann::ordered_json::array();
    for (int jj = 0; jj < n; ++jj) {
      nlohmann::ordered_json jk = nlohmann::ordered_json::array();
      for (int k = 0; k < n; ++k) {
        nlohmann::ordered_json jl = nlohmann::ordered_json::array();
        for (int l = 0; l < n; ++l) jl.push_back(r(i, jj, k, l));
        jk.push_back(std::move(jl));
      }
      ji.push_back(std::move(jk));
    }
    outer.push_back(std::move(ji));
  }
  j["entries"] = std::move(outer);
  return j.dump(2) + "\n";
}

CurvTensor tensor_from_json(const std::string& text, double tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("tensor_from_json: parse error: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("entries"))
    throw Error("tensor_from_json: missing 'n' or 'entries'");
  const int n = j["n"].get<int>();
  if (n < 3) throw UnsupportedDim("tensor_from_json: need n >= 3");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n * n * n);
  const auto& e = j["entries"];
  if (static_cast<int>(e.size()) != n) throw SizeMismatch("tensor_from_json: bad entries shape");
  for (const auto& a : e) {
    if (static_cast<int>(a.size()) != n) throw SizeMismatch("tensor_from_json: bad entries shape");
    for (const auto& b : a) {
      if (static_cast<int>(b.size()) != n) throw SizeMismatch("tensor_from_json: bad entries shape");
      for (const auto& c : b) {
        if (static_cast<int>(c.size()) != n) throw SizeMismatch("tensor_from_json: bad entries shape");
        for (const auto& v : c) flat.push_back(v.get<double>());
      }
    }
  }
  return make_curvature(n, flat, tol);
}

void save_tensor(const std::string& path, const CurvTensor& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_tensor: cannot open " + path);
  out << tensor_to_json(r);
}

CurvTensor load_tensor(const std::string& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("load_tensor: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return tensor_from_json(buf.str(), tol);
}

std::string fmt_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace curvops
