#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apm/analysis.hpp"
#include "apm/bitstring.hpp"
#include "apm/parallel.hpp"

namespace apm {

class SeededRng;

// What a c-bit classical adversary stores about X. Every spec induces a
// partition of {0,1}^n into at most 2^c message classes.
struct MemorySpec {
    enum class Kind { first_bits, subset_bits, parity_bank, file };
    Kind kind = Kind::first_bits;
    int c = 0;                                // first_bits
    std::vector<std::uint32_t> indices;       // subset_bits
    std::vector<BitString> parity_masks;      // parity_bank
    std::string path;                         // file: one class id per line, line t = x encoded as t

    // "first:c", "subset:i,j,...", "parity:FILE", "file:PATH".
    static MemorySpec parse(const std::string& text);
    std::string to_string() const;

    // Stored-message length in bits.
    int output_bits(int n) const;

    // Message classes as subsets, indexed by message value; empty classes
    // are dropped. Throws resource_error when 2^n would not fit in memory.
    std::vector<SubsetA> partition(int n) const;
};

// Optimal distinguishing advantage over 1/2 of the stored classical message:
// E_{message, M}[tvd(p_{A_msg, M}, U)] / 4 with classes weighted |A_msg|/2^n.
// Exact (enumerates all matchings per class); feasible for n <= 14.
double classical_advantage_exact(const MemorySpec& spec, std::uint32_t n, std::uint32_t m,
                                 const ExecPolicy& exec = {});

enum class AdversaryMode { apm, real_vs_uniform };

struct RateReport {
    std::uint64_t trials = 0;
    double rate = 0.0;
    double std_err = 0.0;
    std::uint64_t learned = 0;
};

// Quantum-memory attack: store the fingerprint state of X (log2 n qubits),
// measure along the revealed matching. apm mode distinguishes w = Z from
// w = complement(Z) (expected success 1/2 + alpha); real_vs_uniform
// distinguishes w drawn from Z against uniform w (expected 1/2 + alpha/2).
RateReport quantum_adversary_trial(std::uint32_t n, std::uint32_t m, AdversaryMode mode,
                                   std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec = {});

struct ScenarioReport {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    int c = 0;
    double classical_advantage = 0.0;  // exact
    double quantum_success = 0.0;
    double quantum_std_err = 0.0;
    double quantum_memory_qubits = 0.0;  // log2(n)
    std::uint64_t trials = 0;
    bool degenerate = false;  // m = 0: both sides collapse to coin flipping
};

// Key-expansion scenario: the exact optimal classical advantage of the spec
// against the simulated quantum real-vs-uniform attack.
ScenarioReport key_expansion_report(const MemorySpec& spec, std::uint32_t n, std::uint32_t m,
                                    std::uint64_t trials, SeededRng& rng,
                                    const ExecPolicy& exec = {});

}  // namespace apm
