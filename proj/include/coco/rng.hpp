#pragma once

#include <cstdint>
#include <cmath>
#include <span>
#include <vector>

namespace coco::rng {

// Counter-based generator built on splitmix64. Every draw is a pure function
// of (seed, stream, step, draw), so streams can be evaluated out of order or
// in parallel and are bit-identical for a given seed.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t step, std::uint64_t draw) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream + 0x6a09e667f3bcc909ull));
  h = splitmix64(h ^ (step + 0xbb67ae8584caa73bull));
  h = splitmix64(h ^ (draw + 0x3c6ef372fe94f82bull));
  return h;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t step, std::uint64_t draw = 0) {
  return static_cast<double>(mix(seed, stream, step, draw) >> 11) * 0x1.0p-53;
}

inline double uniform_in(double lo, double hi, std::uint64_t seed,
                         std::uint64_t stream, std::uint64_t step,
                         std::uint64_t draw = 0) {
  return lo + (hi - lo) * uniform(seed, stream, step, draw);
}

inline bool bernoulli(double p, std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t step, std::uint64_t draw = 0) {
  return uniform(seed, stream, step, draw) < p;
}

// Box-Muller; consumes draws `draw` and `draw+1`.
inline double gaussian(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t step, std::uint64_t draw = 0) {
  const double u1 = 1.0 - uniform(seed, stream, step, draw);  // (0, 1]
  const double u2 = uniform(seed, stream, step, draw + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Inverse-CDF draw from a probability vector; ties and rounding resolve to
// the first index whose cumulative mass reaches u.
inline int categorical(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace coco::rng
