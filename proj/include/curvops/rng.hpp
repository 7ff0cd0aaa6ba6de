#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace curvops {

/// splitmix64 stream. Chosen over <random> engines because the normal
/// distribution there is implementation-defined; this generator makes every
/// sampled tensor a pure function of its 64-bit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the spare is cached so the stream stays
  /// a deterministic function of the seed.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic fan-out of one master seed into independent per-cell
/// streams, keyed by a tag string and two indices. Reports produced from the
/// same (master, tag, a, b) are byte-identical across runs.
inline std::uint64_t mix_seed(std::uint64_t master, std::string_view tag,
                              std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the tag
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  Rng m0(master ^ h);
  Rng m1(m0.next_u64() ^ (a * 0x9e3779b97f4a7c15ull));
  Rng m2(m1.next_u64() ^ (b * 0xc2b2ae3d27d4eb4full));
  return m2.next_u64();
}

}  // namespace curvops
