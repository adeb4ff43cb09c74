#pragma once

#include <cstdint>
#include <limits>

namespace heavyspike {

// SplitMix64 step: advances the state and returns a well-mixed 64-bit word.
inline uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives a child seed from (parent seed, stream id). All randomness in the
// library flows through this so that independent streams never overlap.
inline uint64_t mix64(uint64_t seed, uint64_t stream) {
    uint64_t s = seed;
    uint64_t h = splitmix64_next(s);
    s = h ^ stream;
    return splitmix64_next(s);
}

inline uint64_t mix64(uint64_t seed, uint64_t stream, uint64_t substream) {
    return mix64(mix64(seed, stream), substream);
}

// Counter-based engine over SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = uint64_t;
    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}
    result_type operator()() { return splitmix64_next(state_); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

  private:
    uint64_t state_;
};

// Fixed stream ids. Every purpose that consumes randomness derives its own
// child seed as mix64(seed, stream[, index]).
namespace streams {
constexpr uint64_t kSpike = 0x01;
constexpr uint64_t kMatrixNoise = 0x02;
constexpr uint64_t kTensorNoise = 0x03;
constexpr uint64_t kColoring = 0x10;
constexpr uint64_t kRounding = 0x11;
constexpr uint64_t kPowerStart = 0x12;
constexpr uint64_t kCalibration = 0x20;
constexpr uint64_t kStatistic = 0x21;
constexpr uint64_t kCell = 0x30;
constexpr uint64_t kRun = 0x40;
}  // namespace streams

// FNV-1a over a byte string; used for stable cell hashes in the harness.
inline uint64_t fnv1a(const char* data, size_t len) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace heavyspike
