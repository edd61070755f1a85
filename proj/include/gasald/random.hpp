#pragma once

#include <cstdint>
#include <random>

namespace gasald {

// SplitMix64 finalizer; used to derive independent substreams from
// (seed, index) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator with a platform-independent uniform and normal draw.
// std::uniform_real_distribution and std::normal_distribution are
// implementation-defined, so the conversions are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed, 0)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal by inverse CDF.
  double normal();
  // Uniform index in [0, n).
  std::uint64_t index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gasald
