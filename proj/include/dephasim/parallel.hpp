// parallel.hpp — Index-parallel map with a DEPHASIM_THREADS worker cap
//
// Each index writes only its own slot, so results do not depend on worker count
// or scheduling order.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dephasim {

/// Workers from DEPHASIM_THREADS; unset, empty, unparsable or 0 means hardware concurrency.
inline std::size_t worker_count() {
    std::size_t requested = 0;
    if (const char* env = std::getenv("DEPHASIM_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') requested = static_cast<std::size_t>(v);
    }
    if (requested == 0) requested = std::thread::hardware_concurrency();
    return requested == 0 ? 1 : requested;
}

/// Calls fn(i) for every i in [0, n). The exception of the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& fn, std::size_t workers = worker_count()) {
    if (n == 0) return;
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_index = n;

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error) std::rethrow_exception(error);
}

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn, std::size_t workers = worker_count()) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); }, workers);
    return out;
}

} // namespace dephasim
