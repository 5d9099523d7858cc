#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace towers {

/// Chunked parallel loop over [0, n); fn(begin, end, thread_index).
/// Results must be merged by the caller in index order for determinism.
inline void parallel_chunks(size_t n, const std::function<void(size_t, size_t, unsigned)>& fn,
                            unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (n == 0) return;
    threads = static_cast<unsigned>(std::min<size_t>(threads, n));
    if (threads <= 1) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t b = static_cast<size_t>(t) * chunk;
        size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e, t);
    }
    for (auto& th : pool) th.join();
}

}  // namespace towers
