#include "apm/adversary.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "apm/core.hpp"
#include "apm/errors.hpp"
#include "apm/qsim.hpp"
#include "apm/rng.hpp"

namespace apm {

MemorySpec MemorySpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw validation_error("memory spec: expected kind:argument");
    const std::string kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    MemorySpec spec;
    if (kind == "first") {
        spec.kind = Kind::first_bits;
        try {
            spec.c = std::stoi(arg);
        } catch (const std::exception&) {
            throw validation_error("memory spec: first:c needs an integer");
        }
        if (spec.c < 0) throw validation_error("memory spec: c must be >= 0");
    } else if (kind == "subset") {
        spec.kind = Kind::subset_bits;
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            spec.indices.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
    } else if (kind == "parity") {
        spec.kind = Kind::parity_bank;
        std::ifstream in(arg);
        if (!in) throw io_error("cannot open parity mask file: " + arg);
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            spec.parity_masks.push_back(BitString::parse(line));
        }
        spec.path = arg;
    } else if (kind == "file") {
        spec.kind = Kind::file;
        spec.path = arg;
    } else {
        throw validation_error("memory spec: unknown kind '" + kind + "'");
    }
    return spec;
}

std::string MemorySpec::to_string() const {
    switch (kind) {
        case Kind::first_bits:
            return "first:" + std::to_string(c);
        case Kind::subset_bits: {
            std::string out = "subset:";
            for (std::size_t k = 0; k < indices.size(); ++k) {
                if (k) out += ',';
                out += std::to_string(indices[k]);
            }
            return out;
        }
        case Kind::parity_bank:
            return "parity:" + path;
        case Kind::file:
            return "file:" + path;
    }
    return "?";
}

int MemorySpec::output_bits(int n) const {
    switch (kind) {
        case Kind::first_bits:
            if (c > n) throw domain_error("memory spec: c > n");
            return c;
        case Kind::subset_bits:
            return static_cast<int>(indices.size());
        case Kind::parity_bank:
            return static_cast<int>(parity_masks.size());
        case Kind::file: {
            // smallest c with (number of classes) <= 2^c
            const auto classes = partition(n).size();
            int bits = 0;
            while ((std::size_t{1} << bits) < classes) ++bits;
            return bits;
        }
    }
    return 0;
}

std::vector<SubsetA> MemorySpec::partition(int n) const {
    if (n < 0 || n > kMaxSubsetDimension) throw resource_error("memory spec: n too large to partition");
    const std::uint64_t total = std::uint64_t{1} << n;

    auto message_of = [&](std::uint64_t x) -> std::uint64_t {
        switch (kind) {
            case Kind::first_bits:
                return (c == 0) ? 0 : (x & ((std::uint64_t{1} << c) - 1));
            case Kind::subset_bits: {
                std::uint64_t msg = 0;
                for (std::size_t k = 0; k < indices.size(); ++k) {
                    if (indices[k] >= static_cast<std::uint32_t>(n)) {
                        throw domain_error("memory spec: subset index out of range");
                    }
                    msg |= ((x >> indices[k]) & 1) << k;
                }
                return msg;
            }
            case Kind::parity_bank: {
                std::uint64_t msg = 0;
                for (std::size_t k = 0; k < parity_masks.size(); ++k) {
                    const BitString& mask = parity_masks[k];
                    if (mask.len() != static_cast<std::size_t>(n)) {
                        throw dimension_error("memory spec: parity mask length != n");
                    }
                    const std::uint64_t overlap = x & mask.value();
                    msg |= static_cast<std::uint64_t>(std::popcount(overlap) & 1) << k;
                }
                return msg;
            }
            case Kind::file:
                return 0;  // handled below
        }
        return 0;
    };

    std::map<std::uint64_t, std::vector<std::uint32_t>> classes;
    if (kind == Kind::file) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open partition file: " + path);
        std::string line;
        std::uint64_t x = 0;
        while (std::getline(in, line) && x < total) {
            if (line.empty() || line[0] == '#') continue;
            std::uint64_t label = 0;
            try {
                label = std::stoull(line);
            } catch (const std::exception&) {
                throw validation_error("partition file: bad class id '" + line + "'");
            }
            classes[label].push_back(static_cast<std::uint32_t>(x));
            ++x;
        }
        if (x != total) {
            throw validation_error("partition file: expected one class id per line for all 2^n points");
        }
    } else {
        for (std::uint64_t x = 0; x < total; ++x) {
            classes[message_of(x)].push_back(static_cast<std::uint32_t>(x));
        }
    }

    std::vector<SubsetA> out;
    out.reserve(classes.size());
    for (const auto& [label, members] : classes) {
        out.push_back(SubsetA::from_members(n, members));
    }
    return out;
}

double classical_advantage_exact(const MemorySpec& spec, std::uint32_t n, std::uint32_t m,
                                 const ExecPolicy& exec) {
    if (n > 14) {
        throw resource_error("classical_advantage_exact: feasible only for n <= 14");
    }
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("classical_advantage_exact: 2m > n");
    check_enumeration_cap(n, m, exec.enumeration_cap);
    const auto classes = spec.partition(static_cast<int>(n));
    const double total = std::ldexp(1.0, static_cast<int>(n));
    // E over classes (weighted by size) of E_M[tvd], divided by 4: the
    // optimal one-sample distinguishing advantage given the stored message.
    std::vector<double> terms;
    terms.reserve(classes.size());
    SeededRng unused(0);
    for (const SubsetA& cls : classes) {
        const TvdReport report = expected_tvd(cls, m, OracleMode::exact, 0, unused, exec);
        terms.push_back(static_cast<double>(cls.size()) / total * report.mean);
    }
    return pairwise_sum(terms) / 4.0;
}

RateReport quantum_adversary_trial(std::uint32_t n, std::uint32_t m, AdversaryMode mode,
                                   std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec) {
    if (n % 2 != 0) throw domain_error("quantum_adversary_trial: n must be even");
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("quantum_adversary_trial: 2m > n");
    if (trials < 1) throw domain_error("quantum_adversary_trial: trials must be >= 1");
    struct Counts {
        std::uint64_t successes = 0, learned = 0;
    };
    SeededRng base = rng.fork();
    const auto blocks = map_blocks<Counts>(
        trials, exec.block_size, exec.threads, [&](std::uint64_t begin, std::uint64_t end) {
            Counts acc;
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                SeededRng trial_rng = base.child(trial);
                const BitString x = BitString::random(n, trial_rng);
                const Matching matching = sample_matching(n, m, trial_rng);
                const BitString z = extract_z(x, matching);
                int truth;  // apm: the promise bit b; real_vs_uniform: 0 = real
                BitString w(m);
                if (mode == AdversaryMode::apm) {
                    truth = trial_rng.next_bit();
                    for (std::uint32_t l = 0; l < m; ++l) w.set(l, z.get(l) ^ (truth != 0));
                } else {
                    truth = trial_rng.next_bit();
                    w = (truth == 0) ? z : BitString::random(m, trial_rng);
                }
                // the stored fingerprint is measured along the revealed matching
                const auto outcome = run_quantum_message_protocol(x, matching, trial_rng);
                int guess;
                if (outcome) {
                    ++acc.learned;
                    const int w_l = w.get(outcome->edge_index);
                    if (mode == AdversaryMode::apm) {
                        guess = outcome->bit ^ w_l;
                    } else {
                        // matching bit: vote real; mismatch: only uniform w can do that
                        guess = (outcome->bit == w_l) ? 0 : 1;
                    }
                } else {
                    guess = trial_rng.next_bit();
                }
                acc.successes += (guess == truth);
            }
            return acc;
        });
    RateReport report;
    report.trials = trials;
    std::uint64_t successes = 0;
    for (const auto& c : blocks) {
        successes += c.successes;
        report.learned += c.learned;
    }
    report.rate = static_cast<double>(successes) / static_cast<double>(trials);
    report.std_err = std::sqrt(report.rate * (1.0 - report.rate) / static_cast<double>(trials));
    return report;
}

ScenarioReport key_expansion_report(const MemorySpec& spec, std::uint32_t n, std::uint32_t m,
                                    std::uint64_t trials, SeededRng& rng, const ExecPolicy& exec) {
    ScenarioReport report;
    report.n = n;
    report.m = m;
    report.c = spec.output_bits(static_cast<int>(n));
    report.trials = trials;
    report.degenerate = (m == 0);
    report.classical_advantage = classical_advantage_exact(spec, n, m, exec);
    const RateReport quantum = quantum_adversary_trial(n, m, AdversaryMode::real_vs_uniform, trials,
                                                       rng, exec);
    report.quantum_success = quantum.rate;
    report.quantum_std_err = quantum.std_err;
    report.quantum_memory_qubits = std::log2(static_cast<double>(n));
    return report;
}

}  // namespace apm
