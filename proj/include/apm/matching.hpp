#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace apm {

using VertexPair = std::pair<std::uint32_t, std::uint32_t>;

// A partial matching on vertices [0, n): m disjoint pairs in canonical form
// (i < j within a pair, pairs sorted by first endpoint). Doubles as the
// m x n GF(2) matrix whose row l has ones at the two endpoints of pair l.
class Matching {
  public:
    Matching() = default;

    // Canonicalizes and validates; throws validation_error on overlapping
    // endpoints, out-of-range vertices, or 2m > n.
    Matching(std::uint32_t n, std::vector<VertexPair> pairs);

    std::uint32_t n() const { return n_; }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<VertexPair>& pairs() const { return pairs_; }
    const VertexPair& pair(std::size_t index) const { return pairs_[index]; }

    bool is_perfect() const { return 2 * pairs_.size() == n_; }

    // Index of the pair {i, j} (in either order), or -1 if absent.
    int find_pair(std::uint32_t i, std::uint32_t j) const;

    // Inline CLI syntax "i j;i j", e.g. "0 1;2 3".
    static Matching parse(std::uint32_t n, const std::string& text);
    std::string to_string() const;

    bool operator==(const Matching& other) const = default;
    bool operator<(const Matching& other) const;

  private:
    std::uint32_t n_ = 0;
    std::vector<VertexPair> pairs_;
};

// Matching file format: one "i j" pair per line, 0-based; blank lines and
// lines starting with '#' are skipped.
Matching read_matching_file(const std::string& path, std::uint32_t n);
void write_matching_file(const std::string& path, const Matching& matching);

}  // namespace apm
