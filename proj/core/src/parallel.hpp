#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace linkcap::detail {

inline unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

/// Runs body(worker, begin, end) over contiguous blocks of [0, count).
/// The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_blocks(std::size_t count, unsigned threads, Body&& body) {
    const unsigned workers = resolve_threads(threads, count);
    if (workers <= 1) {
        body(0u, std::size_t{0}, count);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace linkcap::detail
