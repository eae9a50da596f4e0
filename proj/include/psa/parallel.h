#ifndef PSA_PARALLEL_H
#define PSA_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psa {

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each chunk.
/// threads == 0 uses the hardware concurrency; threads == 1 runs inline.
/// The first exception thrown by any chunk is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body &&body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::size_t chunk = (n + workers - 1) / workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = w * chunk;
            std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) {
                break;
            }
            pool.emplace_back([&, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace psa

#endif
