#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace friedrichs {

/// Worker count for parallel maps, capped by the FRIEDRICHS_THREADS
/// environment variable.
inline int worker_count(size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* cap = std::getenv("FRIEDRICHS_THREADS")) {
        const long requested = std::strtol(cap, nullptr, 10);
        if (requested >= 1 && static_cast<unsigned>(requested) < hw)
            hw = static_cast<unsigned>(requested);
    }
    if (jobs < hw) hw = static_cast<unsigned>(jobs > 0 ? jobs : 1);
    return static_cast<int>(hw);
}

/// Index-parallel map with deterministic result placement (the body writes
/// into index i of a presized container). The first exception is rethrown on
/// the calling thread.
inline void parallel_for(size_t count, const std::function<void(size_t)>& body) {
    const int workers = worker_count(count);
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace friedrichs
