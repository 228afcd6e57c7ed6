#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace apm {

inline constexpr std::uint64_t kEnumerationCapDefault = 10'000'000;

// Exact oracles enumerate; Monte Carlo oracles sample and report a standard
// error.
enum class OracleMode { exact, monte_carlo };

std::string to_string(OracleMode mode);

// Execution knobs. The block structure is part of the numeric contract:
// per-block accumulation runs left to right and blocks are reduced in index
// order, so results are identical for every thread count.
struct ExecPolicy {
    int threads = 1;
    std::uint64_t block_size = 4096;
    std::uint64_t enumeration_cap = kEnumerationCapDefault;
};

// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

// Applies fn(begin, end) to each block of [0, total); the result vector is
// ordered by block index no matter which worker ran which block.
template <class R, class Fn>
std::vector<R> map_blocks(std::uint64_t total, std::uint64_t block_size, int threads, Fn&& fn) {
    if (block_size == 0) block_size = 1;
    const std::uint64_t num_blocks = (total + block_size - 1) / block_size;
    std::vector<R> results(num_blocks);
    if (num_blocks == 0) return results;

    auto run_block = [&](std::uint64_t b) {
        const std::uint64_t begin = b * block_size;
        const std::uint64_t end = std::min(total, begin + block_size);
        results[b] = fn(begin, end);
    };

    if (threads <= 1 || num_blocks == 1) {
        for (std::uint64_t b = 0; b < num_blocks; ++b) run_block(b);
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= num_blocks) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int worker_count = static_cast<int>(std::min<std::uint64_t>(threads, num_blocks));
    pool.reserve(worker_count);
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace apm
