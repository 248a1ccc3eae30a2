#pragma once
// Deterministic random streams. The engine is the standard mt19937_64 (its
// output sequence is pinned by the C++ standard); the uniform and Gaussian
// mappings are fixed here rather than taken from <random> distributions,
// whose algorithms vary across standard libraries. Byte-reproducible output
// across platforms and runs is a contract, not an aspiration.

#include <cstdint>
#include <random>

#include "speclab/common.hpp"

namespace speclab {

// splitmix64: well-known 64-bit mixer, used to derive independent stream
// keys from (seed, stream) pairs.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x5ec1abu};
    eng_.seed(seq);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log argument.
  double uniform01_open0() { return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; }

  // One standard complex Gaussian (independent N(0,1) real and imaginary
  // parts) via the polar-free Box-Muller map; consumes exactly two draws.
  cplx gaussian_pair() {
    double u = uniform01_open0();
    double v = uniform01();
    double r = std::sqrt(-2.0 * std::log(u));
    return {r * std::cos(two_pi * v), r * std::sin(two_pi * v)};
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace speclab
