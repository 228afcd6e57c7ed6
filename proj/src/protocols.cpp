#include "apm/protocols.hpp"

#include <cmath>
#include <numeric>

#include "apm/core.hpp"
#include "apm/errors.hpp"
#include "apm/exact.hpp"
#include "apm/qsim.hpp"
#include "apm/rng.hpp"

namespace apm {

bool ApmInstance::promise_holds() const {
    const BitString z = extract_z(x, matching);
    for (std::size_t l = 0; l < z.len(); ++l) {
        if ((z.get(l) ^ w.get(l)) != (b != 0)) return false;
    }
    return true;
}

ApmInstance sample_hard_instance(std::uint32_t n, std::uint32_t m, SeededRng& rng) {
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("sample_hard_instance: 2m > n");
    ApmInstance instance;
    instance.x = BitString::random(n, rng);
    instance.matching = sample_matching(n, m, rng);
    instance.b = rng.next_bit();
    const BitString z = extract_z(instance.x, instance.matching);
    instance.w = BitString(m);
    for (std::uint32_t l = 0; l < m; ++l) instance.w.set(l, z.get(l) ^ (instance.b != 0));
    return instance;
}

GuessOutcome solve_apm_quantum(const ApmInstance& instance, std::uint32_t copies, SeededRng& rng) {
    if (copies < 1) throw domain_error("solve_apm_quantum: copies must be >= 1");
    for (std::uint32_t t = 0; t < copies; ++t) {
        const auto outcome = run_quantum_message_protocol(instance.x, instance.matching, rng);
        if (outcome) {
            return GuessOutcome{outcome->bit ^ instance.w.get(outcome->edge_index), true};
        }
    }
    return GuessOutcome{rng.next_bit(), false};
}

GuessOutcome solve_apm_classical(const ApmInstance& instance, std::uint32_t d, SeededRng& rng) {
    const std::uint32_t n = instance.matching.n();
    if (d > n) throw domain_error("solve_apm_classical: d > n");
    std::vector<std::uint32_t> vertices(n);
    std::iota(vertices.begin(), vertices.end(), 0);
    std::vector<std::uint8_t> revealed(n, 0);
    for (std::uint32_t k = 0; k < d; ++k) {
        const std::uint64_t pick = k + rng.below(n - k);
        std::swap(vertices[k], vertices[pick]);
        revealed[vertices[k]] = 1;
    }
    for (std::size_t l = 0; l < instance.matching.size(); ++l) {
        const auto& [i, j] = instance.matching.pair(l);
        if (revealed[i] && revealed[j]) {
            const int z_l = instance.x.get(i) ^ instance.x.get(j);
            return GuessOutcome{z_l ^ instance.w.get(l), true};
        }
    }
    return GuessOutcome{rng.next_bit(), false};
}

namespace {

bool subset_covers_edge(const Matching& matching, const std::vector<std::uint8_t>& in_subset) {
    for (const auto& [i, j] : matching.pairs()) {
        if (in_subset[i] && in_subset[j]) return true;
    }
    return false;
}

double covered_edge_prob_exact(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                               const ExecPolicy& exec) {
    // By vertex symmetry the probability is unchanged if one side is frozen:
    // count matchings against S = {0..d-1}, or d-subsets against the first
    // 2m vertices paired consecutively. Enumerate the smaller side.
    const BigInt matchings = count_matchings(n, m);
    const BigInt subsets = binomial(n, d);
    if (matchings <= subsets) {
        if (matchings > BigInt(exec.enumeration_cap)) {
            throw resource_error("covered_edge_prob: matching enumeration exceeds cap; use mc mode");
        }
        std::vector<std::uint8_t> in_subset(n, 0);
        for (std::uint32_t v = 0; v < d; ++v) in_subset[v] = 1;
        std::uint64_t hits = 0, total = 0;
        MatchingEnumerator it(n, m);
        Matching current;
        while (it.next(current)) {
            ++total;
            if (subset_covers_edge(current, in_subset)) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(total);
    }
    if (subsets > BigInt(exec.enumeration_cap)) {
        throw resource_error("covered_edge_prob: subset enumeration exceeds cap; use mc mode");
    }
    std::vector<VertexPair> pairs;
    for (std::uint32_t l = 0; l < m; ++l) pairs.emplace_back(2 * l, 2 * l + 1);
    const Matching frozen(n, std::move(pairs));
    // enumerate d-subsets of [n] in combination order
    std::vector<std::uint32_t> comb(d);
    std::iota(comb.begin(), comb.end(), 0);
    std::uint64_t hits = 0, total = 0;
    std::vector<std::uint8_t> in_subset(n, 0);
    for (;;) {
        std::fill(in_subset.begin(), in_subset.end(), 0);
        for (const std::uint32_t v : comb) in_subset[v] = 1;
        ++total;
        if (subset_covers_edge(frozen, in_subset)) ++hits;
        // next combination
        int k = static_cast<int>(d) - 1;
        while (k >= 0 && comb[k] == n - d + k) --k;
        if (k < 0) break;
        ++comb[k];
        for (std::size_t t = k + 1; t < d; ++t) comb[t] = comb[t - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

double covered_edge_prob(std::uint32_t n, std::uint32_t m, std::uint32_t d, OracleMode mode,
                         std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec) {
    if (d > n) throw domain_error("covered_edge_prob: d > n");
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("covered_edge_prob: 2m > n");
    if (m == 0) return 0.0;
    if (mode == OracleMode::exact) return covered_edge_prob_exact(n, m, d, exec);

    if (trials == 0) throw domain_error("covered_edge_prob: mc mode needs trials >= 1");
    SeededRng base = rng.fork();
    const auto blocks = map_blocks<std::uint64_t>(
        trials, exec.block_size, exec.threads, [&](std::uint64_t begin, std::uint64_t end) {
            std::uint64_t hits = 0;
            std::vector<std::uint32_t> vertices(n);
            std::vector<std::uint8_t> in_subset(n);
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                SeededRng trial_rng = base.child(trial);
                const Matching matching = sample_matching(n, m, trial_rng);
                std::iota(vertices.begin(), vertices.end(), 0);
                std::fill(in_subset.begin(), in_subset.end(), 0);
                for (std::uint32_t k = 0; k < d; ++k) {
                    const std::uint64_t pick = k + trial_rng.below(n - k);
                    std::swap(vertices[k], vertices[pick]);
                    in_subset[vertices[k]] = 1;
                }
                if (subset_covers_edge(matching, in_subset)) ++hits;
            }
            return hits;
        });
    std::uint64_t hits = 0;
    for (const auto h : blocks) hits += h;
    return static_cast<double>(hits) / static_cast<double>(trials);
}

SuccessReport estimate_success(const SolverSpec& solver, std::uint32_t n, std::uint32_t m,
                               std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec) {
    if (trials < 1) throw domain_error("estimate_success: trials must be >= 1");
    if (solver.kind == SolverSpec::Kind::quantum && n % 2 != 0) {
        throw domain_error("estimate_success: quantum solver needs even n");
    }
    struct Counts {
        std::uint64_t successes = 0, learned = 0, conditional_correct = 0;
    };
    SeededRng base = rng.fork();
    const auto blocks = map_blocks<Counts>(
        trials, exec.block_size, exec.threads, [&](std::uint64_t begin, std::uint64_t end) {
            Counts acc;
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                SeededRng trial_rng = base.child(trial);
                const ApmInstance instance = sample_hard_instance(n, m, trial_rng);
                const GuessOutcome outcome =
                    solver.kind == SolverSpec::Kind::quantum
                        ? solve_apm_quantum(instance, solver.copies, trial_rng)
                        : solve_apm_classical(instance, solver.d, trial_rng);
                const bool correct = outcome.guess == instance.b;
                acc.successes += correct;
                acc.learned += outcome.learned;
                acc.conditional_correct += outcome.learned && correct;
            }
            return acc;
        });
    SuccessReport report;
    report.trials = trials;
    for (const auto& c : blocks) {
        report.successes += c.successes;
        report.learned += c.learned;
        report.conditional_correct += c.conditional_correct;
    }
    report.rate = static_cast<double>(report.successes) / static_cast<double>(trials);
    report.std_err = std::sqrt(report.rate * (1.0 - report.rate) / static_cast<double>(trials));
    return report;
}

double classical_message_bits(std::uint32_t n, std::uint32_t d) {
    const double index_bits = (n <= 1) ? 0.0 : std::ceil(std::log2(static_cast<double>(n)));
    return static_cast<double>(d) * (index_bits + 1.0);
}

double quantum_message_qubits(std::uint32_t n, std::uint32_t copies) {
    return static_cast<double>(copies) * std::log2(static_cast<double>(n));
}

}  // namespace apm
