#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace symdet {

// Runs fn(begin, end) over a partition of [0, total) on up to `threads`
// workers. Chunks are contiguous and fixed by (total, threads) alone, so any
// index-addressed output is identical for every worker count.
template <typename Fn>
void parallel_for(std::size_t total, unsigned threads, Fn&& fn) {
    if (total == 0) return;
    if (threads == 0) threads = 1;
    const std::size_t workers = std::min<std::size_t>(threads, total);
    if (workers <= 1) {
        fn(std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace symdet
