#pragma once

#include <cstdint>

#include "scut/common.hpp"

namespace scut {

// 64-bit mixer from SplitMix64 (Steele, Lea, Flood 2014). Pure integer
// arithmetic, so streams are bit-identical across platforms and compilers.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based stream keyed by (seed, a, b). Draw i of the stream is
// mix64(key + i * golden), i.e. a SplitMix64 sequence whose start state is a
// hash of the key triple. Distinct keys give independent-looking streams and
// the same key always replays the same draws. The simulator keys streams by
// (seed, node, round); other components reserve key spaces via salts.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
      : state_(mix64(mix64(mix64(seed) ^ a) ^ b)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). Rejection sampling keeps it exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ContractViolation("bounded draw needs bound >= 1");
    const std::uint64_t limit = bound * ((~std::uint64_t{0} / bound));
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

// Salts partition the key space of CounterRng so unrelated consumers of the
// same user seed never share a stream. Node ids and rounds stay below 2^32,
// so any salt with high bits set is disjoint from simulator keys.
namespace rng_salt {
constexpr std::uint64_t kGenerator = 0x67656e2d73616c74ull;
constexpr std::uint64_t kOrchestrator = 0x6f7263682d73616cull;
constexpr std::uint64_t kSubSim = 0x7375622d73696d73ull;
}  // namespace rng_salt

// Random stream for one (node, round) pair of a simulation.
inline CounterRng per_node_rng(std::uint64_t seed, NodeId node, std::size_t round) {
  return CounterRng(seed, node, round);
}

}  // namespace scut
