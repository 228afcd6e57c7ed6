#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "apm/core.hpp"
#include "apm/errors.hpp"
#include "apm/rng.hpp"

using namespace apm;

namespace {

// Independent oracle: build every m-edge matching by filtering subsets of the
// full edge list. Slower and structurally different from MatchingEnumerator.
std::set<std::vector<VertexPair>> brute_force_matchings(std::uint32_t n, std::uint32_t m) {
    std::vector<VertexPair> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    std::set<std::vector<VertexPair>> out;
    std::vector<std::size_t> pick(m);
    // iterate combinations of edge indices
    std::vector<bool> mask(edges.size(), false);
    std::fill(mask.begin(), mask.begin() + m, true);
    std::sort(mask.begin(), mask.end());
    do {
        std::vector<VertexPair> chosen;
        std::set<std::uint32_t> seen;
        bool disjoint = true;
        for (std::size_t e = 0; e < edges.size() && disjoint; ++e) {
            if (!mask[e]) continue;
            const auto& [i, j] = edges[e];
            disjoint = seen.insert(i).second && seen.insert(j).second;
            chosen.push_back(edges[e]);
        }
        if (disjoint && chosen.size() == m) {
            std::sort(chosen.begin(), chosen.end());
            out.insert(chosen);
        }
    } while (std::next_permutation(mask.begin(), mask.end()));
    if (m == 0) out.insert({});
    return out;
}

}  // namespace

TEST_CASE("bitstring parse/format round-trip and indexing") {
    const BitString x = BitString::parse("1010");
    CHECK(x.len() == 4);
    CHECK(x.get(0));
    CHECK(!x.get(1));
    CHECK(x.get(2));
    CHECK(!x.get(3));
    CHECK(x.to_string() == "1010");
    CHECK(x.value() == 0b0101);  // bit k of the string sits at integer bit k
    CHECK(BitString::from_value(4, 0b0101) == x);
    CHECK_THROWS_AS(BitString::parse("10x1"), validation_error);
    CHECK_THROWS_AS(x.get(4), domain_error);
}

TEST_CASE("bitstring weight, xor, complement keep padding clean") {
    SeededRng rng(7);
    const BitString a = BitString::random(70, rng);
    const BitString b = BitString::random(70, rng);
    CHECK((a ^ b).weight() <= 70);
    CHECK(a.complement().weight() == 70 - a.weight());
    CHECK((a ^ a).weight() == 0);
    // complement twice is identity
    CHECK(a.complement().complement() == a);
}

TEST_CASE("matching canonicalization and validation") {
    const Matching m(6, {{3, 2}, {0, 1}});
    CHECK(m.pairs() == std::vector<VertexPair>{{0, 1}, {2, 3}});
    CHECK(m.to_string() == "0 1;2 3");
    CHECK(Matching::parse(6, "3 2;0 1") == m);
    CHECK_THROWS_AS(Matching(4, {{0, 0}}), validation_error);
    CHECK_THROWS_AS(Matching(4, {{0, 1}, {1, 2}}), validation_error);
    CHECK_THROWS_AS(Matching(4, {{0, 5}}), validation_error);
    CHECK_THROWS_AS(Matching(3, {{0, 1}, {2, 3}}), validation_error);
}

TEST_CASE("extract_z evaluates edge parities") {
    CHECK(extract_z(BitString::parse("0000"), Matching(4, {{0, 1}})).to_string() == "0");
    CHECK(extract_z(BitString::parse("1010"), Matching(4, {{0, 1}, {2, 3}})).to_string() == "11");
    const BitString ones = BitString::parse("1111");
    for (const auto& m : enumerate_matchings(4, 2)) {
        CHECK(extract_z(ones, m).weight() == 0);
    }
    CHECK_THROWS_AS(extract_z(BitString::parse("101"), Matching(4, {{0, 1}})), dimension_error);
}

TEST_CASE("matT_apply places pair endpoints") {
    const Matching m(4, {{0, 1}, {2, 3}});
    CHECK(matT_apply(m, BitString::parse("10")).to_string() == "1100");
    CHECK(matT_apply(m, BitString::parse("00")).to_string() == "0000");
    CHECK(matT_apply(m, BitString::parse("11")).to_string() == "1111");
    CHECK_THROWS_AS(matT_apply(m, BitString::parse("1")), dimension_error);
}

TEST_CASE("extract_z linearity, complement invariance, parity coupling (exhaustive n<=6)") {
    for (std::uint32_t n = 2; n <= 6; ++n) {
        for (std::uint32_t m = 0; 2 * m <= n; ++m) {
            for (const auto& matching : enumerate_matchings(n, m)) {
                for (std::uint64_t xv = 0; xv < (1ull << n); ++xv) {
                    const BitString x = BitString::from_value(n, xv);
                    const BitString z = extract_z(x, matching);
                    CHECK(extract_z(x.complement(), matching) == z);
                    for (std::uint64_t sv = 0; sv < (1ull << m); ++sv) {
                        const BitString s = BitString::from_value(m, sv);
                        const BitString v = matT_apply(matching, s);
                        CHECK(v.weight() == 2 * s.weight());
                        CHECK(x.dot_parity(v) == z.dot_parity(s));
                    }
                }
                // linearity on a pseudorandom pair
                SeededRng rng(n * 31 + m);
                const BitString x1 = BitString::random(n, rng);
                const BitString x2 = BitString::random(n, rng);
                CHECK(extract_z(x1 ^ x2, matching) ==
                      (extract_z(x1, matching) ^ extract_z(x2, matching)));
            }
        }
    }
}

TEST_CASE("count_matchings exact values") {
    CHECK(count_matchings(4, 1) == 6);
    CHECK(count_matchings(4, 2) == 3);
    CHECK(count_matchings(7, 0) == 1);
    CHECK(count_matchings(12, 3) == 13860);
    CHECK(count_matchings(12, 6) == 10395);
    // no overflow at the top of the supported range
    CHECK(count_matchings(64, 32) == BigInt("112275575285571389562324404930670903477890625"));
    CHECK_THROWS_AS(count_matchings(4, 3), domain_error);
}

TEST_CASE("enumeration matches brute force and the counting formula") {
    CHECK(enumerate_matchings(2, 1) == std::vector<Matching>{Matching(2, {{0, 1}})});
    const auto three = enumerate_matchings(3, 1);
    CHECK(three == std::vector<Matching>{Matching(3, {{0, 1}}), Matching(3, {{0, 2}}),
                                         Matching(3, {{1, 2}})});
    for (std::uint32_t n = 0; n <= 8; ++n) {
        for (std::uint32_t m = 0; 2 * m <= n; ++m) {
            const auto enumerated = enumerate_matchings(n, m);
            CHECK(BigInt(enumerated.size()) == count_matchings(n, m));
            const auto expected = brute_force_matchings(n, m);
            CHECK(enumerated.size() == expected.size());
            std::set<std::vector<VertexPair>> seen;
            for (const auto& matching : enumerated) seen.insert(matching.pairs());
            CHECK(seen == expected);
            // lexicographic order of canonical pair lists
            CHECK(std::is_sorted(enumerated.begin(), enumerated.end(),
                                 [](const Matching& a, const Matching& b) {
                                     return a.pairs() < b.pairs();
                                 }));
        }
    }
    for (std::uint32_t n = 9; n <= 10; ++n) {
        for (std::uint32_t m = 0; 2 * m <= n; ++m) {
            CHECK(BigInt(enumerate_matchings(n, m).size()) == count_matchings(n, m));
        }
    }
}

TEST_CASE("enumeration cap raises a resource error") {
    CHECK_THROWS_AS(enumerate_matchings(40, 20, 1000), resource_error);
}

TEST_CASE("sample_matching is uniform (chi-square at 3-sigma per cell)") {
    SeededRng rng(2024);
    std::map<std::string, int> histogram;
    const int draws = 60000;
    for (int t = 0; t < draws; ++t) {
        const Matching m = sample_matching(4, 1, rng);
        CHECK(m.size() == 1);
        ++histogram[m.to_string()];
    }
    CHECK(histogram.size() == 6);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(p * (1 - p) / draws);
    for (const auto& [key, count] : histogram) {
        CHECK(std::abs(static_cast<double>(count) / draws - p) < 3 * sigma);
    }
}

TEST_CASE("sample_matching degenerate and perfect cases") {
    SeededRng rng(5);
    CHECK(sample_matching(5, 0, rng).size() == 0);
    const Matching perfect = sample_matching(4, 2, rng);
    CHECK(perfect.is_perfect());
    CHECK_THROWS_AS(sample_matching(3, 2, rng), domain_error);
}

TEST_CASE("complete_matching pairs leftovers in ascending order") {
    CHECK(complete_matching(Matching(4, {{0, 1}})) == Matching(4, {{0, 1}, {2, 3}}));
    const Matching already(4, {{0, 2}, {1, 3}});
    CHECK(complete_matching(already) == already);
    CHECK(complete_matching(Matching(6, {{1, 4}})) == Matching(6, {{0, 2}, {1, 4}, {3, 5}}));
    CHECK_THROWS_AS(complete_matching(Matching(5, {{0, 1}})), domain_error);
}

TEST_CASE("seeded rng reproducibility and stream independence") {
    SeededRng a(42, 1), b(42, 1), c(42, 2);
    bool all_equal = true;
    bool any_diff_stream = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff_stream = any_diff_stream || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff_stream);
    // child streams are reproducible too
    SeededRng p(9, 3);
    auto c1 = p.child(17);
    auto c2 = SeededRng(9, 3).child(17);
    CHECK(c1.next_u64() == c2.next_u64());
    CHECK_THROWS_AS(p.below(0), domain_error);
    // bounded draws stay in range and hit every residue eventually
    SeededRng r(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 200; ++i) seen.insert(r.below(5));
    CHECK(seen == std::set<std::uint64_t>{0, 1, 2, 3, 4});
}
