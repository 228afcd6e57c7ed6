#include "apm/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <future>
#include <stdexcept>

#include "apm/core.hpp"
#include "apm/errors.hpp"

namespace apm {

Distribution Distribution::uniform(int m) {
    if (m < 0 || m > kMaxSubsetDimension) throw domain_error("Distribution: m out of range");
    const std::size_t size = std::size_t{1} << m;
    return Distribution{m, std::vector<double>(size, std::ldexp(1.0, -m))};
}

void Distribution::validate() const {
    if (probs.size() != (std::size_t{1} << m)) {
        throw dimension_error("Distribution: probs must have 2^m entries");
    }
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw validation_error("Distribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw validation_error("Distribution: probabilities sum to " + std::to_string(total));
    }
}

SubsetA::SubsetA(int n) : n_(n) {
    if (n < 0 || n > kMaxSubsetDimension) {
        throw domain_error("SubsetA: n must be in [0, " + std::to_string(kMaxSubsetDimension) + "]");
    }
    bitmap_.assign(((std::uint64_t{1} << n) + 63) / 64, 0);
}

bool SubsetA::contains(std::uint32_t x) const {
    return (bitmap_[x >> 6] >> (x & 63)) & 1;
}

void SubsetA::add(std::uint32_t x) {
    if (x >= (std::uint64_t{1} << n_)) throw domain_error("SubsetA::add: element out of range");
    std::uint64_t& word = bitmap_[x >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (x & 63);
    if (!(word & mask)) {
        word |= mask;
        ++size_;
    }
}

double SubsetA::info_deficit() const {
    if (size_ == 0) throw domain_error("SubsetA: empty set has no deficit");
    return n_ - std::log2(static_cast<double>(size_));
}

std::vector<std::uint32_t> SubsetA::members() const {
    std::vector<std::uint32_t> out;
    out.reserve(size_);
    for (std::size_t w = 0; w < bitmap_.size(); ++w) {
        std::uint64_t word = bitmap_[w];
        while (word) {
            const int bit = std::countr_zero(word);
            out.push_back(static_cast<std::uint32_t>(w * 64 + bit));
            word &= word - 1;
        }
    }
    return out;
}

SubsetA SubsetA::full_cube(int n) {
    SubsetA out(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::size_t w = 0; w < out.bitmap_.size(); ++w) out.bitmap_[w] = ~std::uint64_t{0};
    if (total % 64 != 0) out.bitmap_.back() = (std::uint64_t{1} << (total % 64)) - 1;
    out.size_ = total;
    return out;
}

SubsetA SubsetA::prefix_parity(int n, int c) {
    if (c < 0 || 2 * c > n) throw domain_error("prefix_parity: need 0 <= 2c <= n");
    SubsetA out(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t x = 0; x < total; ++x) {
        bool ok = true;
        for (int i = 0; i < c; ++i) {
            if (((x >> (2 * i)) & 1) != ((x >> (2 * i + 1)) & 1)) {
                ok = false;
                break;
            }
        }
        if (ok) out.add(static_cast<std::uint32_t>(x));
    }
    return out;
}

SubsetA SubsetA::first_bits_zero(int n, int c) {
    if (c < 0 || c > n) throw domain_error("first_bits_zero: need 0 <= c <= n");
    SubsetA out(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t mask = (c == 0) ? 0 : ((std::uint64_t{1} << c) - 1);
    for (std::uint64_t x = 0; x < total; ++x) {
        if ((x & mask) == 0) out.add(static_cast<std::uint32_t>(x));
    }
    return out;
}

SubsetA SubsetA::random_of_size(int n, int c, SeededRng& rng) {
    if (c < 0 || c > n) throw domain_error("random_of_size: need 0 <= c <= n");
    SubsetA out(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t target = std::uint64_t{1} << (n - c);
    // Floyd's sampling: uniform over all subsets of the given size.
    for (std::uint64_t j = total - target; j < total; ++j) {
        const std::uint64_t pick = rng.below(j + 1);
        if (out.contains(static_cast<std::uint32_t>(pick))) {
            out.add(static_cast<std::uint32_t>(j));
        } else {
            out.add(static_cast<std::uint32_t>(pick));
        }
    }
    return out;
}

SubsetA SubsetA::from_members(int n, const std::vector<std::uint32_t>& members) {
    SubsetA out(n);
    for (std::uint32_t x : members) {
        if (out.contains(x)) throw validation_error("SubsetA: duplicate member");
        out.add(x);
    }
    return out;
}

SubsetA SubsetA::read_set_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open set file: " + path);
    SubsetA out(n);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const BitString x = BitString::parse(line);
        if (x.len() != static_cast<std::size_t>(n)) {
            throw validation_error("set file: bitstring length " + std::to_string(x.len()) +
                                   " does not match n=" + std::to_string(n));
        }
        const auto value = static_cast<std::uint32_t>(x.value());
        if (out.contains(value)) throw validation_error("set file: duplicate member " + line);
        out.add(value);
    }
    return out;
}

namespace {

// z(x, M) as an integer index, for x given as an integer cube point.
std::uint32_t extract_z_index(std::uint32_t x, const Matching& matching) {
    std::uint32_t z = 0;
    for (std::size_t l = 0; l < matching.size(); ++l) {
        const auto& [i, j] = matching.pair(l);
        z |= (((x >> i) ^ (x >> j)) & 1u) << l;
    }
    return z;
}

void count_conditional(const std::vector<std::uint32_t>& members, const Matching& matching,
                       std::vector<std::uint64_t>& counts) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const std::uint32_t x : members) ++counts[extract_z_index(x, matching)];
}

// tvd(p_M, U) from outcome counts, plus the Cauchy-Schwarz guard
// tvd^2 <= 2^{2m} ||p - U||_2^2 that the main bound relies on.
double tvd_from_counts(const std::vector<std::uint64_t>& counts, std::uint64_t set_size, int m) {
    const double inv_size = 1.0 / static_cast<double>(set_size);
    const double u = std::ldexp(1.0, -m);
    double dist = 0.0;
    double l2 = 0.0;
    for (const std::uint64_t count : counts) {
        const double diff = static_cast<double>(count) * inv_size - u;
        dist += std::abs(diff);
        l2 += diff * diff;
    }
    if (dist * dist > std::ldexp(l2, m) + 1e-9) {
        throw std::logic_error("Cauchy-Schwarz violation in tvd evaluation");
    }
    return dist;
}

struct MomentAcc {
    double sum = 0.0;
    double sum_sq = 0.0;
};

TvdReport finalize_report(const std::vector<MomentAcc>& blocks, std::uint64_t count,
                          OracleMode mode) {
    std::vector<double> sums, sums_sq;
    sums.reserve(blocks.size());
    sums_sq.reserve(blocks.size());
    for (const auto& b : blocks) {
        sums.push_back(b.sum);
        sums_sq.push_back(b.sum_sq);
    }
    TvdReport report;
    report.mode = mode;
    report.matchings_evaluated = count;
    if (count == 0) return report;
    report.mean = pairwise_sum(sums) / static_cast<double>(count);
    report.mean_sq = pairwise_sum(sums_sq) / static_cast<double>(count);
    if (mode == OracleMode::monte_carlo && count > 1) {
        const double var =
            std::max(0.0, (report.mean_sq - report.mean * report.mean) *
                              (static_cast<double>(count) / static_cast<double>(count - 1)));
        report.std_err = std::sqrt(var / static_cast<double>(count));
    }
    return report;
}

TvdReport expected_tvd_exact(const SubsetA& a, std::uint32_t m, const ExecPolicy& exec) {
    check_enumeration_cap(a.n(), m, exec.enumeration_cap);
    const auto members = a.members();
    const std::size_t outcomes = std::size_t{1} << m;

    auto process = [&](const std::vector<Matching>& batch, std::vector<std::uint64_t>& counts) {
        MomentAcc acc;
        for (const Matching& matching : batch) {
            count_conditional(members, matching, counts);
            const double value = tvd_from_counts(counts, a.size(), static_cast<int>(m));
            acc.sum += value;
            acc.sum_sq += value * value;
        }
        return acc;
    };

    MatchingEnumerator it(static_cast<std::uint32_t>(a.n()), m);
    const std::uint64_t block = std::max<std::uint64_t>(1, exec.block_size);
    const int workers = std::max(1, exec.threads);

    std::vector<MomentAcc> blocks;
    std::uint64_t count = 0;
    std::vector<std::vector<Matching>> batches(workers);
    bool exhausted = false;
    std::vector<std::uint64_t> inline_counts(outcomes);
    while (!exhausted) {
        int filled = 0;
        for (int t = 0; t < workers && !exhausted; ++t) {
            batches[t].clear();
            Matching current;
            while (batches[t].size() < block) {
                if (!it.next(current)) {
                    exhausted = true;
                    break;
                }
                batches[t].push_back(current);
            }
            if (!batches[t].empty()) filled = t + 1;
        }
        if (filled == 0) break;
        if (workers == 1 || filled == 1) {
            for (int t = 0; t < filled; ++t) {
                blocks.push_back(process(batches[t], inline_counts));
                count += batches[t].size();
            }
        } else {
            std::vector<std::future<MomentAcc>> futures;
            futures.reserve(filled);
            for (int t = 0; t < filled; ++t) {
                futures.push_back(std::async(std::launch::async, [&, t] {
                    std::vector<std::uint64_t> counts(outcomes);
                    return process(batches[t], counts);
                }));
            }
            for (int t = 0; t < filled; ++t) {
                blocks.push_back(futures[t].get());
                count += batches[t].size();
            }
        }
    }
    return finalize_report(blocks, count, OracleMode::exact);
}

TvdReport expected_tvd_mc(const SubsetA& a, std::uint32_t m, std::uint64_t trials, SeededRng& rng,
                          const ExecPolicy& exec) {
    if (trials == 0) throw domain_error("expected_tvd: Monte Carlo mode needs trials >= 1");
    const auto members = a.members();
    const std::size_t outcomes = std::size_t{1} << m;
    const auto n = static_cast<std::uint32_t>(a.n());
    SeededRng base = rng.fork();

    auto blocks = map_blocks<MomentAcc>(
        trials, exec.block_size, exec.threads, [&](std::uint64_t begin, std::uint64_t end) {
            MomentAcc acc;
            std::vector<std::uint64_t> counts(outcomes);
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                SeededRng trial_rng = base.child(trial);
                const Matching matching = sample_matching(n, m, trial_rng);
                count_conditional(members, matching, counts);
                const double value = tvd_from_counts(counts, a.size(), static_cast<int>(m));
                acc.sum += value;
                acc.sum_sq += value * value;
            }
            return acc;
        });
    return finalize_report(blocks, trials, OracleMode::monte_carlo);
}

}  // namespace

Distribution conditional_dist(const SubsetA& a, const Matching& matching) {
    if (a.n() != static_cast<int>(matching.n())) {
        throw dimension_error("conditional_dist: A.n must equal matching.n");
    }
    if (a.empty()) throw domain_error("conditional_dist: A must be nonempty");
    const auto members = a.members();
    std::vector<std::uint64_t> counts(std::size_t{1} << matching.size());
    count_conditional(members, matching, counts);
    Distribution out{static_cast<int>(matching.size()), std::vector<double>(counts.size())};
    const double inv_size = 1.0 / static_cast<double>(a.size());
    for (std::size_t z = 0; z < counts.size(); ++z) {
        out.probs[z] = static_cast<double>(counts[z]) * inv_size;
    }
    return out;
}

double tvd(const Distribution& p, const Distribution& q) {
    if (p.m != q.m || p.probs.size() != q.probs.size()) {
        throw dimension_error("tvd: distributions live on different domains");
    }
    double dist = 0.0;
    for (std::size_t z = 0; z < p.probs.size(); ++z) dist += std::abs(p.probs[z] - q.probs[z]);
    return dist;
}

Spectrum pm_spectrum_via_f(const SubsetA& a, const Matching& matching) {
    if (a.n() != static_cast<int>(matching.n())) {
        throw dimension_error("pm_spectrum_via_f: A.n must equal matching.n");
    }
    if (a.empty()) throw domain_error("pm_spectrum_via_f: A must be nonempty");
    CubeFunction indicator = CubeFunction::constant(a.n(), 0.0);
    for (const std::uint32_t x : a.members()) indicator.values[x] = 1.0;
    const Spectrum f_hat = fwht(indicator);

    const auto m = static_cast<int>(matching.size());
    Spectrum out{m, std::vector<double>(std::size_t{1} << m)};
    const double scale = std::ldexp(1.0, a.n() - m) / static_cast<double>(a.size());
    for (std::uint32_t s = 0; s < out.coeffs.size(); ++s) {
        std::uint64_t v = 0;
        for (int l = 0; l < m; ++l) {
            if ((s >> l) & 1) {
                const auto& [i, j] = matching.pair(l);
                v |= (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
            }
        }
        out.coeffs[s] = scale * f_hat.coeffs[v];
    }
    return out;
}

TvdReport expected_tvd(const SubsetA& a, std::uint32_t m, OracleMode mode, std::uint64_t trials,
                       SeededRng& rng, const ExecPolicy& exec) {
    if (a.empty()) throw domain_error("expected_tvd: A must be nonempty");
    if (2 * static_cast<std::uint64_t>(m) > static_cast<std::uint64_t>(a.n())) {
        throw domain_error("expected_tvd: 2m > n");
    }
    if (mode == OracleMode::exact) return expected_tvd_exact(a, m, exec);
    return expected_tvd_mc(a, m, trials, rng, exec);
}

BigRational matching_hit_prob(std::uint32_t n, std::uint32_t m, std::uint32_t k) {
    if (k > n) throw domain_error("matching_hit_prob: k must be in [0, n]");
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("matching_hit_prob: 2m > n");
    if (k % 2 != 0) return BigRational(0);
    return BigRational(binomial(m, k / 2), binomial(n, k));
}

double level_bound_lemma4(double c, int k) {
    if (k < 1 || static_cast<double>(k) > 4.0 * c) {
        throw domain_error("level_bound_lemma4: k must be in [1, 4c]");
    }
    return std::pow(4.0 * std::sqrt(2.0) * c / static_cast<double>(k), k);
}

BigRational gk(std::uint32_t n, std::uint32_t m, std::uint32_t k) {
    if (k % 2 != 0) throw domain_error("gk: k must be even");
    if (k < 2 || k > 2 * m) throw domain_error("gk: k must be in [2, 2m]");
    if (2 * static_cast<std::uint64_t>(m) > n) throw domain_error("gk: 2m > n");
    return BigRational(binomial(m, k / 2), binomial(n, k));
}

FamilySpec FamilySpec::parse(const std::string& name, std::uint64_t seed, const std::string& path) {
    FamilySpec spec;
    spec.seed = seed;
    spec.path = path;
    if (name == "full") {
        spec.kind = Kind::full;
    } else if (name == "prefix-parity") {
        spec.kind = Kind::prefix_parity;
    } else if (name == "first-bits-fixed") {
        spec.kind = Kind::first_bits_fixed;
    } else if (name == "random") {
        spec.kind = Kind::random_of_size;
    } else if (name == "file") {
        spec.kind = Kind::file;
        if (path.empty()) throw validation_error("family 'file' needs a set-file path");
    } else {
        throw validation_error("unknown set family: " + name);
    }
    return spec;
}

std::string FamilySpec::name() const {
    switch (kind) {
        case Kind::full: return "full";
        case Kind::prefix_parity: return "prefix-parity";
        case Kind::first_bits_fixed: return "first-bits-fixed";
        case Kind::random_of_size: return "random";
        case Kind::file: return "file";
    }
    return "?";
}

SubsetA make_family_subset(const FamilySpec& family, int n, int c) {
    switch (family.kind) {
        case FamilySpec::Kind::full:
            return SubsetA::full_cube(n);
        case FamilySpec::Kind::prefix_parity:
            return SubsetA::prefix_parity(n, c);
        case FamilySpec::Kind::first_bits_fixed:
            return SubsetA::first_bits_zero(n, c);
        case FamilySpec::Kind::random_of_size: {
            SeededRng rng(family.seed, 0x5e7f00dULL + static_cast<std::uint64_t>(c));
            return SubsetA::random_of_size(n, c, rng);
        }
        case FamilySpec::Kind::file:
            return SubsetA::read_set_file(family.path, n);
    }
    throw validation_error("make_family_subset: bad family kind");
}

std::vector<SweepRow> theorem1_sweep(const FamilySpec& family, int n, std::uint32_t m, int c_min,
                                     int c_max, OracleMode mode, std::uint64_t trials,
                                     SeededRng& rng, const ExecPolicy& exec) {
    std::vector<SweepRow> rows;
    const double alpha = static_cast<double>(m) / static_cast<double>(n);
    for (int c = c_min; c <= c_max; ++c) {
        const SubsetA a = make_family_subset(family, n, c);
        const TvdReport report = expected_tvd(a, m, mode, trials, rng, exec);
        SweepRow row;
        row.c = c;
        row.set_size = a.size();
        row.c_scaled = static_cast<double>(c) * std::sqrt(alpha / static_cast<double>(n));
        row.mean = report.mean;
        row.mean_sq = report.mean_sq;
        row.std_err = report.std_err;
        row.matchings_evaluated = report.matchings_evaluated;
        row.outside_proven_regime = 4 * static_cast<std::uint64_t>(m) > static_cast<std::uint64_t>(n);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace apm
