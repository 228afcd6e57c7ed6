#pragma once

#include <cstdint>
#include <vector>

#include "apm/bitstring.hpp"
#include "apm/exact.hpp"
#include "apm/matching.hpp"

namespace apm {

class SeededRng;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// z(x, M): bit l is the parity of x over the endpoints of pair l.
BitString extract_z(const BitString& x, const Matching& matching);

// v = M^T s: vertex bits i_l and j_l are set iff s[l] = 1.
BitString matT_apply(const Matching& matching, const BitString& s);

// |M_{n,m}| = n! / (2^m m! (n-2m)!), exact.
BigInt count_matchings(std::uint32_t n, std::uint32_t m);

// Yields every matching of m pairs on [0, n) exactly once, in lexicographic
// order of the canonical pair list.
class MatchingEnumerator {
  public:
    MatchingEnumerator(std::uint32_t n, std::uint32_t m);

    bool next(Matching& out);

  private:
    std::uint32_t n_;
    std::uint32_t m_;
    std::vector<VertexPair> pairs_;
    std::vector<std::uint8_t> used_;
    bool started_ = false;
    bool done_ = false;

    std::uint32_t first_free_at(std::uint32_t lo) const;
    bool fill_from(std::uint32_t depth);
    void unwind(std::uint32_t from, std::uint32_t to);
    void release(std::uint32_t i, std::uint32_t j);
    void occupy(std::uint32_t i, std::uint32_t j);
};

// Materializes the full enumeration; throws resource_error above the cap.
std::vector<Matching> enumerate_matchings(std::uint32_t n, std::uint32_t m,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// Throws resource_error if count_matchings(n, m) exceeds the cap.
void check_enumeration_cap(std::uint32_t n, std::uint32_t m, std::uint64_t cap);

// Exactly uniform over M_{n,m}: a partial Fisher-Yates pass picks 2m distinct
// vertices, consecutive picks form pairs, canonicalization quotients out the
// within-pair and between-pair orderings.
Matching sample_matching(std::uint32_t n, std::uint32_t m, SeededRng& rng);

// Extends the matching to a perfect one (n must be even); uncovered
// vertices are paired in ascending order, so the result is deterministic.
Matching complete_matching(const Matching& matching);

}  // namespace apm
