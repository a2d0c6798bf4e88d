// Minimal deterministic index-range parallelism.
#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace nfvsim {

// Splits [0, count) into contiguous chunks, one per worker. The callable
// receives (begin, end); workers must only write to disjoint, index-addressed
// slots so the result is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace nfvsim
