#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace apm {

// Fourier analysis on {0,1}^n with the probabilist's normalization: the
// forward transform carries the 1/2^n factor, so f_hat(s) = <f, chi_s> and
// f = sum_s f_hat(s) chi_s. Index y encodes the cube point with bit k of y
// at position k.

inline constexpr int kMaxCubeDimension = 26;

struct CubeFunction {
    int n = 0;
    std::vector<double> values;  // size 2^n

    static CubeFunction constant(int n, double value);
};

struct Spectrum {
    int n = 0;
    std::vector<double> coeffs;  // size 2^n, entry s holds f_hat(s)
};

// In-place butterflies on a caller-provided buffer; data.size() must be 2^n.
// Forward includes the 1/2^n scaling, inverse is scale-free.
void fwht_inplace(std::span<double> data, int n);
void inverse_fwht_inplace(std::span<double> data, int n);

Spectrum fwht(const CubeFunction& f);
CubeFunction inverse_fwht(const Spectrum& spectrum);

// Sum of squared coefficients over indices of Hamming weight exactly k.
double level_weight(const Spectrum& spectrum, int k);

// <f, f> = 2^{-n} sum f(y)^2.
double norm2_sq(const CubeFunction& f);

// Both sides of the KKL inequality for f: {0,1}^n -> {-1,0,1}:
// lhs = sum_s delta^|s| f_hat(s)^2, rhs = (|support|/2^n)^{2/(1+delta)}.
struct KklMargin {
    double lhs = 0.0;
    double rhs = 0.0;
};
KklMargin kkl_margin(const CubeFunction& f, double delta);

}  // namespace apm
