#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace renewalkit {

// Deterministic block-parallel map-reduce: blocks are assigned fixed ids and
// results are combined in block order, so the outcome does not depend on the
// thread count or schedule.
template <class Acc>
Acc parallel_blocks(long n_blocks, int threads, const std::function<Acc(long)>& run_block,
                    const std::function<void(Acc&, const Acc&)>& merge) {
    if (threads < 1) threads = 1;
    std::vector<Acc> results(static_cast<size_t>(n_blocks));
    if (threads == 1) {
        for (long b = 0; b < n_blocks; ++b) results[static_cast<size_t>(b)] = run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (long b = t; b < n_blocks; b += threads) results[static_cast<size_t>(b)] = run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    Acc acc{};
    for (long b = 0; b < n_blocks; ++b) merge(acc, results[static_cast<size_t>(b)]);
    return acc;
}

}  // namespace renewalkit
