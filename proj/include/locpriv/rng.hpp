#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace locpriv {

// Stream indices for the seed-derivation scheme. One stream per purpose so
// that skipping a draw (e.g. an estimator that never looks at observations)
// cannot shift another stream.
inline constexpr std::uint64_t kStreamTrajectory = 0;
inline constexpr std::uint64_t kStreamNoise = 1;
inline constexpr std::uint64_t kStreamSchedule = 2;
inline constexpr std::uint64_t kStreamSimulate = 3;

// Sentinel trial index for per-run (not per-trial) streams.
inline constexpr std::uint64_t kGlobalTrial = ~std::uint64_t{0};

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Named splittable seed scheme (documented in the README):
//   seed = mix64(mix64(master + GOLDEN*(trial+1)) ^ (GOLDEN2*(stream+1)))
// with GOLDEN = 0x9e3779b97f4a7c15, GOLDEN2 = 0xd1b54a32d192ed03.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::uint64_t trial,
                                           std::uint64_t stream) {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  constexpr std::uint64_t kGolden2 = 0xd1b54a32d192ed03ULL;
  return mix64(mix64(master + kGolden * (trial + 1)) ^ (kGolden2 * (stream + 1)));
}

// Deterministic generator: mt19937_64 (bit-exact per the C++ standard) with
// explicit, fixed mappings to doubles. std::uniform_real_distribution et al.
// are implementation-defined, so they are avoided on purpose.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via the Box-Muller cosine branch; consumes exactly two
  // uniforms per draw so streams stay aligned.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * M_PI * u2);
  }

  // Uniform integer in [0, n). floor(u*n) is deterministic; the modulo-free
  // bias is below 2^-53 per draw and irrelevant at our scales.
  int uniform_int(int n) {
    const int v = static_cast<int>(uniform() * n);
    return v >= n ? n - 1 : v;
  }

  // Inverse-CDF draw from a probability vector (rows of P, or pi).
  template <class Derived>
  int categorical(const Eigen::DenseBase<Derived>& probs) {
    const double u = uniform();
    double cum = 0.0;
    const int n = static_cast<int>(probs.size());
    for (int i = 0; i < n; ++i) {
      cum += probs(i);
      if (u < cum) return i;
    }
    return n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace locpriv
