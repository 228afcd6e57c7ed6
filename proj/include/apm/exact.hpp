#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace apm {

// Counting is done exactly; probabilities stay rational until an API
// boundary converts them to binary64.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

double to_double(const BigRational& value);

}  // namespace apm
