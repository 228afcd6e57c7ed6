#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apm/bitstring.hpp"
#include "apm/matching.hpp"

namespace apm {

class SeededRng;

// log n qubits modeled directly as an n-dimensional statevector over the
// index space [0, n); n need not be a power of two.
struct QuantumState {
    std::uint32_t n = 0;
    std::vector<std::complex<double>> amps;

    double norm_sq() const;
    void renormalize();
};

// |psi> = n^{-1/2} sum_i (-1)^{x_i} |i>.
QuantumState make_fingerprint_state(const BitString& x);

struct EdgeMeasurement {
    int edge_index = -1;  // index of the measured pair within the matching
    QuantumState state;   // collapsed and renormalized
};

// Projective measurement onto the n/2 two-dimensional edge subspaces of a
// perfect matching; the outcome edge is Born-sampled by inverse CDF.
EdgeMeasurement measure_matching(const QuantumState& state, const Matching& perfect, SeededRng& rng);

// Readout in the |+/-> basis of the two-index support; deterministic when the
// relative phase is +-1 (returns 0 iff the amplitudes share their sign),
// Born-sampled for general two-index states.
int measure_pm_basis(const QuantumState& state, SeededRng& rng);

struct ProtocolOutcome {
    int edge_index = 0;  // position l within Bob's matching
    int bit = 0;         // z_l, exact for fingerprint inputs
};

// Fingerprint message, arbitrary completion to a perfect matching, edge
// measurement, +/- readout. Present with probability 2*alpha; when present
// the learned bit equals extract_z(x, M)[l] with certainty.
std::optional<ProtocolOutcome> run_quantum_message_protocol(const BitString& x, const Matching& matching,
                                                            SeededRng& rng);

// One streamed token: an input bit, an edge, or a promise bit tied to an edge.
struct StreamEvent {
    enum class Kind { bit, edge, promise_bit };
    Kind kind = Kind::bit;
    std::uint32_t i = 0;
    std::uint32_t j = 0;  // unused for Kind::bit
    int value = 0;        // x_i for bit, w_l for promise_bit

    static StreamEvent make_bit(std::uint32_t i, int value);
    static StreamEvent make_edge(std::uint32_t i, std::uint32_t j);
    static StreamEvent make_promise_bit(std::uint32_t i, std::uint32_t j, int value);
};

struct StreamOutcome {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    int bit = 0;  // x_i xor x_j xor w_l when the stream carried those tokens
};

// Small-space streaming run: uniform start state; bit and promise-bit events
// apply diagonal phases, edge events measure {E1 = projector on {i,j},
// E0 = complement} with collapse; if some E1 fired, the final +/- readout
// produces the bit. Events are validated for mutual consistency first.
std::optional<StreamOutcome> run_streaming(std::uint32_t n, std::span<const StreamEvent> events,
                                           SeededRng& rng);

// The canonical full event sequence for an instance: all input bits, then
// edges, then promise bits. Tests permute it to exercise order invariance.
std::vector<StreamEvent> make_stream_events(const BitString& x, const Matching& matching,
                                            const BitString& w);

// Stream file format: "b i v" (bit), "e i j" (edge), "w i j v" (promise bit).
std::vector<StreamEvent> read_stream_file(const std::string& path);
std::string format_stream_event(const StreamEvent& event);

}  // namespace apm
