#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apm/bitstring.hpp"
#include "apm/exact.hpp"
#include "apm/matching.hpp"
#include "apm/parallel.hpp"
#include "apm/rng.hpp"
#include "apm/spectral.hpp"

namespace apm {

inline constexpr int kMaxSubsetDimension = 24;

// Probability vector over {0,1}^m bit strings, indexed by integer encoding.
struct Distribution {
    int m = 0;
    std::vector<double> probs;

    static Distribution uniform(int m);
    void validate() const;  // entries >= 0, total within 1e-9 of 1
};

// A subset of {0,1}^n held as a 2^n membership bitmap (n <= 24); elements
// are the integer encodings of the member bit strings.
class SubsetA {
  public:
    explicit SubsetA(int n);

    static SubsetA full_cube(int n);
    // x_{2i} xor x_{2i+1} = 0 for i < c; each constraint halves the set.
    static SubsetA prefix_parity(int n, int c);
    // x_i = 0 for i < c (the nested hard family).
    static SubsetA first_bits_zero(int n, int c);
    // Uniformly random subset of size exactly 2^{n-c}.
    static SubsetA random_of_size(int n, int c, SeededRng& rng);
    static SubsetA from_members(int n, const std::vector<std::uint32_t>& members);
    // One bitstring per line; duplicates rejected.
    static SubsetA read_set_file(const std::string& path, int n);

    int n() const { return n_; }
    std::uint64_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains(std::uint32_t x) const;
    void add(std::uint32_t x);

    // Bits of missing information c = n - log2|A|.
    double info_deficit() const;

    std::vector<std::uint32_t> members() const;

  private:
    int n_ = 0;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> bitmap_;
};

struct TvdReport {
    double mean = 0.0;
    double mean_sq = 0.0;
    double std_err = 0.0;  // 0 in exact mode
    OracleMode mode = OracleMode::exact;
    std::uint64_t matchings_evaluated = 0;
};

// p_M(z) = |{x in A : z(x, M) = z}| / |A|.
Distribution conditional_dist(const SubsetA& a, const Matching& matching);

// Total variation distance sum_z |p(z) - q(z)|, without the 1/2 factor;
// ranges over [0, 2]. One-sample distinguishing success is 1/2 + tvd/4.
double tvd(const Distribution& p, const Distribution& q);

// Spectrum of p_M obtained from the indicator's transform:
// coeffs[s] = (2^n / (|A| 2^m)) * f_hat(M^T s). Must match
// fwht(conditional_dist(a, matching)) entrywise.
Spectrum pm_spectrum_via_f(const SubsetA& a, const Matching& matching);

// E_M[tvd(p_M, U)] together with the mean of tvd^2: exact mode averages over
// the full enumeration of M_{n,m}, Monte Carlo over sampled matchings with a
// reported standard error.
TvdReport expected_tvd(const SubsetA& a, std::uint32_t m, OracleMode mode, std::uint64_t trials,
                       SeededRng& rng, const ExecPolicy& exec = {});

// Pr_M[exists s with M^T s = v] for any fixed v of weight k:
// C(m, k/2) / C(n, k) for even k, 0 for odd k.
BigRational matching_hit_prob(std::uint32_t n, std::uint32_t m, std::uint32_t k);

// (4 sqrt(2) c / k)^k, the level-k bound for sets with |A| >= 2^{n-c}.
double level_bound_lemma4(double c, int k);

// g(k) = C(m, k/2) / C(n, k) on its decreasing range of even k in [2, 2m].
BigRational gk(std::uint32_t n, std::uint32_t m, std::uint32_t k);

// Named, reproducible set families for experiments.
struct FamilySpec {
    enum class Kind { full, prefix_parity, first_bits_fixed, random_of_size, file };
    Kind kind = Kind::full;
    std::uint64_t seed = 0;   // random_of_size
    std::string path;         // file

    // "full", "prefix-parity", "first-bits-fixed", "random", "file".
    static FamilySpec parse(const std::string& name, std::uint64_t seed = 0,
                            const std::string& path = {});
    std::string name() const;
};

SubsetA make_family_subset(const FamilySpec& family, int n, int c);

struct SweepRow {
    int c = 0;
    std::uint64_t set_size = 0;
    double c_scaled = 0.0;  // c * sqrt(alpha / n), the Theorem-1 abscissa
    double mean = 0.0;
    double mean_sq = 0.0;
    double std_err = 0.0;
    std::uint64_t matchings_evaluated = 0;
    bool outside_proven_regime = false;  // alpha > 1/4
};

std::vector<SweepRow> theorem1_sweep(const FamilySpec& family, int n, std::uint32_t m, int c_min,
                                     int c_max, OracleMode mode, std::uint64_t trials,
                                     SeededRng& rng, const ExecPolicy& exec = {});

}  // namespace apm
