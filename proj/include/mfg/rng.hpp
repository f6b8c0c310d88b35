#pragma once

#include <cstdint>
#include <random>

namespace mfg {

/// Deterministic random stream. The generator is mt19937_64 (sequence fixed
/// by the standard) and every variate transform is hand-rolled, so a given
/// (seed, stream) pair produces the same draws on any platform. Each worker
/// owns one stream; disjoint stream ids give independent sequences.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via the polar method.
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Mixes (seed, stream) into a single well-spread 64-bit generator seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mfg
