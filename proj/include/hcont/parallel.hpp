#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hcont {

/// Runs body(i) for i in [0, count) on up to `tasks` threads. Each index is
/// processed exactly once; callers write results into per-index slots so the
/// outcome is independent of scheduling. The first exception is rethrown.
template <class Body>
void parallelFor(std::size_t count, unsigned tasks, Body&& body) {
    tasks = std::max(1u, tasks);
    if (tasks == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex errorMutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(tasks, count);
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

} // namespace hcont
