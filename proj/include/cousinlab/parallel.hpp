#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cousinlab {

// Worker cap shared by the scans (CLI --threads). 0 means hardware concurrency.
unsigned& thread_setting();

inline unsigned worker_count() {
    unsigned t = thread_setting();
    if (t == 0)
        t = std::thread::hardware_concurrency();
    return t == 0 ? 1 : t;
}

// body(i) for every i in [0, count). Callers write results by index, so the
// outcome is independent of scheduling. If several iterations throw, the
// exception of the smallest index wins.
template <class F>
void parallel_for(std::size_t count, F&& body) {
    unsigned workers = worker_count();
    if (workers <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t err_index = count;
    std::exception_ptr err;
    const std::size_t chunk = 32;
    auto run = [&] {
        for (;;) {
            std::size_t start = next.fetch_add(chunk);
            if (start >= count)
                return;
            std::size_t stop = std::min(count, start + chunk);
            for (std::size_t i = start; i < stop; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < err_index) {
                        err_index = i;
                        err = std::current_exception();
                    }
                    break;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    for (auto& t : pool)
        t.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace cousinlab
