#include "apm/parallel.hpp"

namespace apm {

std::string to_string(OracleMode mode) {
    return mode == OracleMode::exact ? "exact" : "mc";
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double total = 0.0;
        for (double v : values) total += v;
        return total;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace apm
