#include "apm/rng.hpp"

#include "apm/errors.hpp"

namespace apm {

std::uint64_t SeededRng::splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream))) {}

std::uint64_t SeededRng::next_u64() {
    return engine_();
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) throw domain_error("SeededRng::below: bound must be positive");
    // Reject the incomplete top interval so every residue is equally likely.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int SeededRng::next_bit() {
    return static_cast<int>(next_u64() >> 63);
}

SeededRng SeededRng::child(std::uint64_t index) const {
    return SeededRng(seed_, splitmix64(stream_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

SeededRng SeededRng::fork() {
    return SeededRng(seed_, next_u64());
}

}  // namespace apm
