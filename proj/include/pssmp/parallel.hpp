#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace pssmp {

inline unsigned worker_count() {
    if (const char* env = std::getenv("PSSMP_THREADS")) {
        const long n = std::atol(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

// Runs fn(i) for i in [0, n). Work is handed out in fixed-size chunks via an
// atomic counter; any cross-item state must be indexed by i so that results
// are independent of the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         std::size_t chunk = 64) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 2 * chunk) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const std::size_t end = begin + chunk < n ? begin + chunk : n;
            for (std::size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
}

}  // namespace pssmp
