#pragma once

#include <cstdint>

#include "apm/bitstring.hpp"
#include "apm/matching.hpp"
#include "apm/parallel.hpp"

namespace apm {

class SeededRng;

// One alphaPM input under the promise w = z(x, M) xor b^m.
struct ApmInstance {
    BitString x;
    Matching matching;
    BitString w;
    int b = 0;  // ground truth

    bool promise_holds() const;
};

// Yao hard distribution: x uniform, M uniform over M_{n,m}, b a fair coin.
ApmInstance sample_hard_instance(std::uint32_t n, std::uint32_t m, SeededRng& rng);

struct GuessOutcome {
    int guess = 0;
    bool learned = false;  // true when the answer came from a learned z-bit
};

// t independent fingerprint messages; the first run that measures an edge of
// M yields z_l, and z_l xor w_l equals b exactly. Falls back to a fair coin.
GuessOutcome solve_apm_quantum(const ApmInstance& instance, std::uint32_t copies, SeededRng& rng);

// Birthday protocol: Alice sends a uniform d-subset of her bits; Bob answers
// from the first fully covered edge, or guesses.
GuessOutcome solve_apm_classical(const ApmInstance& instance, std::uint32_t d, SeededRng& rng);

// Pr over uniform d-subset S and uniform M that some edge of M lies in S.
// Exact mode enumerates matchings or subsets, whichever side is smaller.
double covered_edge_prob(std::uint32_t n, std::uint32_t m, std::uint32_t d, OracleMode mode,
                         std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec = {});

struct SolverSpec {
    enum class Kind { quantum, classical };
    Kind kind = Kind::quantum;
    std::uint32_t copies = 1;  // quantum: number of fingerprint messages
    std::uint32_t d = 0;       // classical: bits revealed
};

struct SuccessReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double rate = 0.0;
    double std_err = 0.0;
    std::uint64_t learned = 0;              // trials that learned a z-bit
    std::uint64_t conditional_correct = 0;  // learned trials that were right
};

// Success rate of a solver over sampled hard instances, with binomial
// standard error and the zero-sided-error audit counters.
SuccessReport estimate_success(const SolverSpec& solver, std::uint32_t n, std::uint32_t m,
                               std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec = {});

// Message-cost accounting for reports: index+value encoding for the
// classical protocol, log2(n) qubits per fingerprint copy for the quantum.
double classical_message_bits(std::uint32_t n, std::uint32_t d);
double quantum_message_qubits(std::uint32_t n, std::uint32_t copies);

}  // namespace apm
