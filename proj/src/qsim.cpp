#include "apm/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "apm/core.hpp"
#include "apm/errors.hpp"
#include "apm/rng.hpp"

namespace apm {

namespace {
constexpr double kNormTolerance = 1e-9;
constexpr double kSupportTolerance = 1e-12;
}  // namespace

double QuantumState::norm_sq() const {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    return total;
}

void QuantumState::renormalize() {
    const double norm = std::sqrt(norm_sq());
    if (norm == 0.0) throw domain_error("QuantumState: cannot renormalize the zero vector");
    for (auto& a : amps) a /= norm;
}

QuantumState make_fingerprint_state(const BitString& x) {
    if (x.len() == 0) throw domain_error("make_fingerprint_state: n must be >= 1");
    QuantumState state{static_cast<std::uint32_t>(x.len()),
                       std::vector<std::complex<double>>(x.len())};
    const double amp = 1.0 / std::sqrt(static_cast<double>(x.len()));
    for (std::size_t i = 0; i < x.len(); ++i) {
        state.amps[i] = x.get(i) ? -amp : amp;
    }
    return state;
}

EdgeMeasurement measure_matching(const QuantumState& state, const Matching& perfect, SeededRng& rng) {
    if (perfect.n() != state.n) throw dimension_error("measure_matching: state/matching size mismatch");
    if (!perfect.is_perfect()) throw domain_error("measure_matching: matching must be perfect");
    if (std::abs(state.norm_sq() - 1.0) > kNormTolerance) {
        throw validation_error("measure_matching: state is not normalized");
    }

    // Born weights per edge subspace, sampled by inverse CDF. The draw is
    // compared against the running prefix rather than a pre-divided value so
    // the last edge absorbs any rounding slack.
    const double draw = rng.next_double() * state.norm_sq();
    double prefix = 0.0;
    int outcome = static_cast<int>(perfect.size()) - 1;
    for (std::size_t l = 0; l < perfect.size(); ++l) {
        const auto& [i, j] = perfect.pair(l);
        prefix += std::norm(state.amps[i]) + std::norm(state.amps[j]);
        if (draw < prefix) {
            outcome = static_cast<int>(l);
            break;
        }
    }

    EdgeMeasurement result;
    result.edge_index = outcome;
    result.state.n = state.n;
    result.state.amps.assign(state.n, 0.0);
    const auto& [i, j] = perfect.pair(outcome);
    result.state.amps[i] = state.amps[i];
    result.state.amps[j] = state.amps[j];
    result.state.renormalize();
    return result;
}

int measure_pm_basis(const QuantumState& state, SeededRng& rng) {
    int support[2] = {-1, -1};
    int found = 0;
    for (std::uint32_t k = 0; k < state.n; ++k) {
        if (std::abs(state.amps[k]) > kSupportTolerance) {
            if (found == 2) throw domain_error("measure_pm_basis: support larger than two indices");
            support[found++] = static_cast<int>(k);
        }
    }
    if (found != 2) throw domain_error("measure_pm_basis: support must be exactly two indices");
    const std::complex<double> a = state.amps[support[0]];
    const std::complex<double> b = state.amps[support[1]];
    // Outcome 0 is |+> = (|i> + |j>)/sqrt(2).
    const double p_plus = 0.5 * std::norm(a + b);
    const double p_minus = 0.5 * std::norm(a - b);
    const double total = p_plus + p_minus;
    if (p_plus >= total - kSupportTolerance) return 0;
    if (p_minus >= total - kSupportTolerance) return 1;
    return rng.next_double() * total < p_plus ? 0 : 1;
}

std::optional<ProtocolOutcome> run_quantum_message_protocol(const BitString& x,
                                                            const Matching& matching,
                                                            SeededRng& rng) {
    if (x.len() != matching.n()) {
        throw dimension_error("run_quantum_message_protocol: x.len must equal matching.n");
    }
    if (x.len() % 2 != 0) throw domain_error("run_quantum_message_protocol: n must be even");
    const QuantumState message = make_fingerprint_state(x);
    const Matching completion = complete_matching(matching);
    const EdgeMeasurement measured = measure_matching(message, completion, rng);
    const auto& [i, j] = completion.pair(measured.edge_index);
    const int l = matching.find_pair(i, j);
    if (l < 0) return std::nullopt;
    ProtocolOutcome outcome;
    outcome.edge_index = l;
    outcome.bit = measure_pm_basis(measured.state, rng);
    return outcome;
}

StreamEvent StreamEvent::make_bit(std::uint32_t i, int value) {
    return StreamEvent{Kind::bit, i, 0, value};
}

StreamEvent StreamEvent::make_edge(std::uint32_t i, std::uint32_t j) {
    return StreamEvent{Kind::edge, i, j, 0};
}

StreamEvent StreamEvent::make_promise_bit(std::uint32_t i, std::uint32_t j, int value) {
    return StreamEvent{Kind::promise_bit, i, j, value};
}

namespace {

// The edge and promise-bit pairs must jointly describe one matching, each
// kind at most once per pair, and every x-bit may stream by at most once.
void validate_stream(std::uint32_t n, std::span<const StreamEvent> events) {
    std::vector<std::uint8_t> bit_seen(n, 0);
    std::map<VertexPair, std::pair<int, int>> pair_counts;  // (edge events, promise events)
    for (const StreamEvent& event : events) {
        switch (event.kind) {
            case StreamEvent::Kind::bit:
                if (event.i >= n) throw validation_error("stream: bit index out of range");
                if (event.value != 0 && event.value != 1) {
                    throw validation_error("stream: bit value must be 0 or 1");
                }
                if (bit_seen[event.i]++) {
                    throw validation_error("stream: bit " + std::to_string(event.i) +
                                           " appears more than once");
                }
                break;
            case StreamEvent::Kind::edge:
            case StreamEvent::Kind::promise_bit: {
                if (event.i >= n || event.j >= n) throw validation_error("stream: edge index out of range");
                if (event.i == event.j) throw validation_error("stream: degenerate edge");
                if (event.kind == StreamEvent::Kind::promise_bit && event.value != 0 &&
                    event.value != 1) {
                    throw validation_error("stream: promise bit value must be 0 or 1");
                }
                const VertexPair key{std::min(event.i, event.j), std::max(event.i, event.j)};
                auto& counts = pair_counts[key];
                int& slot = (event.kind == StreamEvent::Kind::edge) ? counts.first : counts.second;
                if (slot++) {
                    throw validation_error("stream: pair (" + std::to_string(key.first) + "," +
                                           std::to_string(key.second) + ") repeats an event kind");
                }
                break;
            }
        }
    }
    // all distinct pairs must be mutually disjoint (one underlying matching)
    std::vector<std::uint8_t> covered(n, 0);
    for (const auto& [key, counts] : pair_counts) {
        if (covered[key.first]++ || covered[key.second]++) {
            throw validation_error("stream: edge/promise pairs are not disjoint");
        }
    }
}

}  // namespace

std::optional<StreamOutcome> run_streaming(std::uint32_t n, std::span<const StreamEvent> events,
                                           SeededRng& rng) {
    if (n == 0) throw domain_error("run_streaming: n must be >= 1");
    validate_stream(n, events);

    QuantumState state{n, std::vector<std::complex<double>>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
    bool fired = false;
    std::uint32_t fired_i = 0, fired_j = 0;
    for (const StreamEvent& event : events) {
        switch (event.kind) {
            case StreamEvent::Kind::bit:
                if (event.value) state.amps[event.i] = -state.amps[event.i];
                break;
            case StreamEvent::Kind::promise_bit:
                if (event.value) {
                    const std::uint32_t target = std::min(event.i, event.j);
                    state.amps[target] = -state.amps[target];
                }
                break;
            case StreamEvent::Kind::edge: {
                const double p1 = std::norm(state.amps[event.i]) + std::norm(state.amps[event.j]);
                const double total = state.norm_sq();
                if (rng.next_double() * total < p1) {
                    // E1: collapse onto the edge subspace
                    for (std::uint32_t k = 0; k < n; ++k) {
                        if (k != event.i && k != event.j) state.amps[k] = 0.0;
                    }
                    fired = true;
                    fired_i = std::min(event.i, event.j);
                    fired_j = std::max(event.i, event.j);
                } else {
                    // E0: zero out the edge subspace
                    state.amps[event.i] = 0.0;
                    state.amps[event.j] = 0.0;
                }
                state.renormalize();
                break;
            }
        }
    }
    if (!fired) return std::nullopt;
    StreamOutcome outcome;
    outcome.i = fired_i;
    outcome.j = fired_j;
    outcome.bit = measure_pm_basis(state, rng);
    return outcome;
}

std::vector<StreamEvent> make_stream_events(const BitString& x, const Matching& matching,
                                            const BitString& w) {
    if (x.len() != matching.n()) throw dimension_error("make_stream_events: x.len must equal matching.n");
    if (w.len() != matching.size()) {
        throw dimension_error("make_stream_events: w.len must equal the number of pairs");
    }
    std::vector<StreamEvent> events;
    events.reserve(x.len() + 2 * matching.size());
    for (std::uint32_t i = 0; i < x.len(); ++i) events.push_back(StreamEvent::make_bit(i, x.get(i)));
    for (std::size_t l = 0; l < matching.size(); ++l) {
        const auto& [i, j] = matching.pair(l);
        events.push_back(StreamEvent::make_edge(i, j));
    }
    for (std::size_t l = 0; l < matching.size(); ++l) {
        const auto& [i, j] = matching.pair(l);
        events.push_back(StreamEvent::make_promise_bit(i, j, w.get(l)));
    }
    return events;
}

std::vector<StreamEvent> read_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open stream file: " + path);
    std::vector<StreamEvent> events;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        std::int64_t i = -1, j = -1, v = -1;
        bool ok = false;
        if (tag == "b") {
            ok = static_cast<bool>(ls >> i >> v) && i >= 0 && (v == 0 || v == 1);
            if (ok) events.push_back(StreamEvent::make_bit(static_cast<std::uint32_t>(i), static_cast<int>(v)));
        } else if (tag == "e") {
            ok = static_cast<bool>(ls >> i >> j) && i >= 0 && j >= 0;
            if (ok) events.push_back(StreamEvent::make_edge(static_cast<std::uint32_t>(i),
                                                            static_cast<std::uint32_t>(j)));
        } else if (tag == "w") {
            ok = static_cast<bool>(ls >> i >> j >> v) && i >= 0 && j >= 0 && (v == 0 || v == 1);
            if (ok) events.push_back(StreamEvent::make_promise_bit(static_cast<std::uint32_t>(i),
                                                                   static_cast<std::uint32_t>(j),
                                                                   static_cast<int>(v)));
        }
        if (!ok) throw validation_error("stream file: bad line '" + line + "'");
    }
    return events;
}

std::string format_stream_event(const StreamEvent& event) {
    switch (event.kind) {
        case StreamEvent::Kind::bit:
            return "b " + std::to_string(event.i) + " " + std::to_string(event.value);
        case StreamEvent::Kind::edge:
            return "e " + std::to_string(event.i) + " " + std::to_string(event.j);
        case StreamEvent::Kind::promise_bit:
            return "w " + std::to_string(event.i) + " " + std::to_string(event.j) + " " +
                   std::to_string(event.value);
    }
    return {};
}

}  // namespace apm
