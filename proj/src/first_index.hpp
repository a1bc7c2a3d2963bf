#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace pigas::detail {

/// Smallest index in [0, total) accepted by `pred`, searched by `jobs`
/// threads over contiguous chunks. `pred` must be safe to call concurrently.
template <class Pred>
std::optional<std::uint64_t> first_index(std::uint64_t total, unsigned jobs, Pred pred) {
    if (total == 0) return std::nullopt;
    jobs = std::max(1u, jobs);
    const std::uint64_t chunks = std::min<std::uint64_t>(total, std::uint64_t{jobs} * 16);
    const std::uint64_t chunk_size = (total + chunks - 1) / chunks;

    constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{none};
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker = [&] {
        for (;;) {
            const std::uint64_t chunk = next_chunk.fetch_add(1);
            if (chunk >= chunks) return;
            const std::uint64_t begin = chunk * chunk_size;
            const std::uint64_t end = std::min(total, begin + chunk_size);
            for (std::uint64_t idx = begin; idx < end && idx < best.load(); ++idx) {
                if (!pred(idx)) continue;
                std::uint64_t cur = best.load();
                while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                }
                break;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (best.load() == none) return std::nullopt;
    return best.load();
}

}  // namespace pigas::detail
