#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace sisi {

/// Runs fn(i) for i in [0, count). Work items must be independent and write
/// only to their own output slot; results are then identical for any thread
/// count.
template <class F>
void parallel_for(std::uint64_t count, unsigned threads, F&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<std::uint64_t>(threads, count);
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, count / (8ull * workers));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::uint64_t begin = next.fetch_add(chunk);
                if (begin >= count) return;
                std::uint64_t end = std::min(count, begin + chunk);
                for (std::uint64_t i = begin; i < end; ++i) fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace sisi
