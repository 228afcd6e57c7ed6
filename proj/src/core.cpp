#include "apm/core.hpp"

#include <algorithm>
#include <numeric>

#include "apm/errors.hpp"
#include "apm/rng.hpp"

namespace apm {

BitString extract_z(const BitString& x, const Matching& matching) {
    if (x.len() != matching.n()) {
        throw dimension_error("extract_z: x.len must equal matching.n");
    }
    BitString z(matching.size());
    for (std::size_t l = 0; l < matching.size(); ++l) {
        const auto& [i, j] = matching.pair(l);
        z.set(l, x.get(i) ^ x.get(j));
    }
    return z;
}

BitString matT_apply(const Matching& matching, const BitString& s) {
    if (s.len() != matching.size()) {
        throw dimension_error("matT_apply: s.len must equal the number of pairs");
    }
    BitString v(matching.n());
    for (std::size_t l = 0; l < matching.size(); ++l) {
        if (s.get(l)) {
            const auto& [i, j] = matching.pair(l);
            v.set(i, true);
            v.set(j, true);
        }
    }
    return v;
}

BigInt count_matchings(std::uint32_t n, std::uint32_t m) {
    if (2 * static_cast<std::uint64_t>(m) > n) {
        throw domain_error("count_matchings: 2m > n");
    }
    return factorial(n) / ((BigInt(1) << m) * factorial(m) * factorial(n - 2 * m));
}

MatchingEnumerator::MatchingEnumerator(std::uint32_t n, std::uint32_t m)
    : n_(n), m_(m), pairs_(m), used_(n, 0) {
    if (2 * static_cast<std::uint64_t>(m) > n) {
        throw domain_error("MatchingEnumerator: 2m > n");
    }
}

std::uint32_t MatchingEnumerator::first_free_at(std::uint32_t lo) const {
    for (std::uint32_t u = lo; u < n_; ++u) {
        if (!used_[u]) return u;
    }
    return n_;
}

void MatchingEnumerator::occupy(std::uint32_t i, std::uint32_t j) {
    used_[i] = 1;
    used_[j] = 1;
}

void MatchingEnumerator::release(std::uint32_t i, std::uint32_t j) {
    used_[i] = 0;
    used_[j] = 0;
}

void MatchingEnumerator::unwind(std::uint32_t from, std::uint32_t to) {
    for (std::uint32_t u = from; u < to; ++u) release(pairs_[u].first, pairs_[u].second);
}

// Greedy lexicographically-smallest completion of pairs_[depth..m). First
// indices are strictly increasing, so everything below the last first-index
// is dead; taking the smallest admissible first index maximizes the usable
// pool, and greedy failure means no completion exists.
bool MatchingEnumerator::fill_from(std::uint32_t depth) {
    for (std::uint32_t t = depth; t < m_; ++t) {
        const std::uint32_t lo = (t == 0) ? 0 : pairs_[t - 1].first + 1;
        const std::uint32_t i = first_free_at(lo);
        if (i >= n_) {
            unwind(depth, t);
            return false;
        }
        const std::uint32_t j = first_free_at(i + 1);
        if (j >= n_) {
            unwind(depth, t);
            return false;
        }
        pairs_[t] = {i, j};
        occupy(i, j);
    }
    return true;
}

bool MatchingEnumerator::next(Matching& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        if (!fill_from(0)) {
            done_ = true;
            return false;
        }
        out = Matching(n_, pairs_);
        return true;
    }
    for (std::uint32_t t = m_; t-- > 0;) {
        const auto [i, j] = pairs_[t];
        release(i, j);
        // Larger second endpoint, same first. Completion feasibility depends
        // only on how many free vertices sit above the first endpoint, so one
        // failed attempt rules out every j candidate at this level.
        const std::uint32_t j2 = first_free_at(j + 1);
        if (j2 < n_) {
            pairs_[t] = {i, j2};
            occupy(i, j2);
            if (fill_from(t + 1)) {
                out = Matching(n_, pairs_);
                return true;
            }
            release(i, j2);
        }
        // Larger first endpoint with its smallest partner; anything larger
        // only shrinks the completion pool.
        const std::uint32_t i2 = first_free_at(i + 1);
        if (i2 < n_) {
            const std::uint32_t j3 = first_free_at(i2 + 1);
            if (j3 < n_) {
                pairs_[t] = {i2, j3};
                occupy(i2, j3);
                if (fill_from(t + 1)) {
                    out = Matching(n_, pairs_);
                    return true;
                }
                release(i2, j3);
            }
        }
    }
    done_ = true;
    return false;
}

void check_enumeration_cap(std::uint32_t n, std::uint32_t m, std::uint64_t cap) {
    if (count_matchings(n, m) > BigInt(cap)) {
        throw resource_error("enumeration of M_{" + std::to_string(n) + "," + std::to_string(m) +
                             "} exceeds the cap of " + std::to_string(cap) +
                             " matchings; use Monte Carlo mode");
    }
}

std::vector<Matching> enumerate_matchings(std::uint32_t n, std::uint32_t m, std::uint64_t cap) {
    check_enumeration_cap(n, m, cap);
    std::vector<Matching> out;
    MatchingEnumerator it(n, m);
    Matching current;
    while (it.next(current)) out.push_back(current);
    return out;
}

Matching sample_matching(std::uint32_t n, std::uint32_t m, SeededRng& rng) {
    if (2 * static_cast<std::uint64_t>(m) > n) {
        throw domain_error("sample_matching: 2m > n");
    }
    std::vector<std::uint32_t> vertices(n);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::vector<VertexPair> pairs;
    pairs.reserve(m);
    for (std::uint32_t k = 0; k < 2 * m; ++k) {
        const std::uint64_t pick = k + rng.below(n - k);
        std::swap(vertices[k], vertices[pick]);
        if (k % 2 == 1) pairs.emplace_back(vertices[k - 1], vertices[k]);
    }
    return Matching(n, std::move(pairs));
}

Matching complete_matching(const Matching& matching) {
    if (matching.n() % 2 != 0) {
        throw domain_error("complete_matching: n must be even");
    }
    std::vector<std::uint8_t> covered(matching.n(), 0);
    for (const auto& [i, j] : matching.pairs()) {
        covered[i] = 1;
        covered[j] = 1;
    }
    std::vector<VertexPair> pairs = matching.pairs();
    std::uint32_t pending = matching.n();  // sentinel: no half-open pair
    for (std::uint32_t v = 0; v < matching.n(); ++v) {
        if (covered[v]) continue;
        if (pending == matching.n()) {
            pending = v;
        } else {
            pairs.emplace_back(pending, v);
            pending = matching.n();
        }
    }
    return Matching(matching.n(), std::move(pairs));
}

}  // namespace apm
