// Minimal deterministic parallel-for. Work items write only to their own
// index, so scheduling never changes results. CURVEGAIT_THREADS caps the
// worker count (1 disables threading).
#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace curvegait {

inline int max_threads() {
    if (const char* env = std::getenv("CURVEGAIT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    int workers = std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t begin = static_cast<std::size_t>(w) * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn]() {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace curvegait
