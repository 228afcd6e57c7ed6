#include "apm/exact.hpp"

namespace apm {

BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

double to_double(const BigRational& value) {
    return value.convert_to<double>();
}

}  // namespace apm
