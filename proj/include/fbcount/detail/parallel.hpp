#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

#include "fbcount/config.hpp"

namespace fbc::detail {

inline int thread_count(const Config& cfg) {
    int n = cfg.threads;
    if (n <= 0) {
        if (const char* env = std::getenv("FBCOUNT_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = int(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

// Static block partition so results are independent of scheduling; callers
// must sort/merge before any order-sensitive reduction.
template <typename Fn>
void parallel_for(int n, const Config& cfg, Fn&& fn) {
    int workers = std::min(thread_count(cfg), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        int lo = int(std::int64_t(n) * w / workers);
        int hi = int(std::int64_t(n) * (w + 1) / workers);
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace fbc::detail
