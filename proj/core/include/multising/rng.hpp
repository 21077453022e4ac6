#pragma once

#include <cstdint>
#include <random>

namespace multising {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; used to derive independent child seeds.
inline std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix_seed(master ^ mix_seed(stream + 0x5851f42d4c957f2dULL));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

/// Gamma with shape/rate parameterisation.
inline double gamma_shape_rate(Rng& rng, double shape, double rate) {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

inline double beta_draw(Rng& rng, double a, double b) {
  const double x = gamma_shape_rate(rng, a, 1.0);
  const double y = gamma_shape_rate(rng, b, 1.0);
  return x / (x + y);
}

}  // namespace multising
