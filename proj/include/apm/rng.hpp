#pragma once

#include <cstdint>
#include <random>

namespace apm {

// Deterministic, stream-splittable randomness. The engine is std::mt19937_64
// (bit-exact across platforms); bounded integers and doubles are produced by
// our own draws because the std distributions are implementation-defined.
//
// Identical (seed, stream) pairs reproduce identical sequences. Parallel
// callers derive per-task generators with child(i); distinct indices give
// statistically independent streams.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    // 53-bit uniform double in [0, 1).
    double next_double();

    int next_bit();

    SeededRng child(std::uint64_t index) const;

    // Derives an independent stream and advances this generator, so repeated
    // forks from the same parent never coincide.
    SeededRng fork();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    static std::uint64_t splitmix64(std::uint64_t x);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace apm
