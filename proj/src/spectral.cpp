#include "apm/spectral.hpp"

#include <bit>
#include <cmath>

#include "apm/errors.hpp"

namespace apm {

namespace {

void check_shape(std::size_t size, int n) {
    if (n < 0 || n > kMaxCubeDimension) {
        throw domain_error("cube dimension must be in [0, " + std::to_string(kMaxCubeDimension) + "]");
    }
    if (size != (std::size_t{1} << n)) {
        throw dimension_error("cube buffer must have exactly 2^n entries");
    }
}

void butterflies(std::span<double> data, int n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t block = 0; block < size; block += 2 * half) {
            for (std::size_t k = block; k < block + half; ++k) {
                const double a = data[k];
                const double b = data[k + half];
                data[k] = a + b;
                data[k + half] = a - b;
            }
        }
    }
}

}  // namespace

CubeFunction CubeFunction::constant(int n, double value) {
    if (n < 0 || n > kMaxCubeDimension) {
        throw domain_error("cube dimension must be in [0, " + std::to_string(kMaxCubeDimension) + "]");
    }
    return CubeFunction{n, std::vector<double>(std::size_t{1} << n, value)};
}

void fwht_inplace(std::span<double> data, int n) {
    check_shape(data.size(), n);
    butterflies(data, n);
    const double scale = std::ldexp(1.0, -n);
    for (double& v : data) v *= scale;
}

void inverse_fwht_inplace(std::span<double> data, int n) {
    check_shape(data.size(), n);
    butterflies(data, n);
}

Spectrum fwht(const CubeFunction& f) {
    Spectrum out{f.n, f.values};
    fwht_inplace(out.coeffs, f.n);
    return out;
}

CubeFunction inverse_fwht(const Spectrum& spectrum) {
    CubeFunction out{spectrum.n, spectrum.coeffs};
    inverse_fwht_inplace(out.values, spectrum.n);
    return out;
}

double level_weight(const Spectrum& spectrum, int k) {
    check_shape(spectrum.coeffs.size(), spectrum.n);
    if (k < 0 || k > spectrum.n) {
        throw domain_error("level_weight: k must be in [0, n]");
    }
    double total = 0.0;
    for (std::size_t s = 0; s < spectrum.coeffs.size(); ++s) {
        if (std::popcount(s) == k) total += spectrum.coeffs[s] * spectrum.coeffs[s];
    }
    return total;
}

double norm2_sq(const CubeFunction& f) {
    check_shape(f.values.size(), f.n);
    double total = 0.0;
    for (double v : f.values) total += v * v;
    return std::ldexp(total, -f.n);
}

KklMargin kkl_margin(const CubeFunction& f, double delta) {
    check_shape(f.values.size(), f.n);
    if (delta < 0.0 || delta > 1.0) {
        throw domain_error("kkl_margin: delta must be in [0, 1]");
    }
    std::size_t support = 0;
    for (double v : f.values) {
        if (v == 0.0) continue;
        if (v != 1.0 && v != -1.0) {
            throw domain_error("kkl_margin: f must take values in {-1, 0, 1}");
        }
        ++support;
    }
    const Spectrum spectrum = fwht(f);

    // delta^|s| via one table of powers; 0^0 = 1 covers the s = 0 term.
    std::vector<double> delta_pow(f.n + 1);
    delta_pow[0] = 1.0;
    for (int k = 1; k <= f.n; ++k) delta_pow[k] = delta_pow[k - 1] * delta;

    KklMargin out;
    for (std::size_t s = 0; s < spectrum.coeffs.size(); ++s) {
        out.lhs += delta_pow[std::popcount(s)] * spectrum.coeffs[s] * spectrum.coeffs[s];
    }
    const double density = std::ldexp(static_cast<double>(support), -f.n);
    out.rhs = std::pow(density, 2.0 / (1.0 + delta));
    return out;
}

}  // namespace apm
