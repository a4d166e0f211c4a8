#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace opal {

// Worker cap: OMEGA_PSEUDOALG_THREADS when set, hardware concurrency otherwise.
inline long worker_count() {
    if (const char* env = std::getenv("OMEGA_PSEUDOALG_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<long>(hc) : 1;
}

// Runs f(i) for i in [0, n). Tasks must be independent; callers collect
// results into preallocated slots so the merge order is fixed regardless of
// the thread count.
template <class F>
void parallel_for(long n, F&& f) {
    long workers = std::min<long>(worker_count(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (long w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long i = w; i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace opal
