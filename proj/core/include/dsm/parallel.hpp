#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "dsm/rng.hpp"

namespace dsm {

// Fixed block count for every parallel Monte Carlo loop. Work for n samples
// is split into kParallelBlocks chunks; chunk k always draws from
// RngStream(seed, k) and partial results are merged in chunk order, so the
// result is bit-identical no matter how many workers execute the chunks.
inline constexpr int kParallelBlocks = 64;

inline int resolve_workers(int workers) {
    if (workers > 0) return workers;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(state[k], rng_k, count_k, k) for each block k and returns the
// per-block states in block order. State needs a default constructor.
template <typename State, typename BlockFn>
std::vector<State> run_blocks(std::uint64_t n, std::uint64_t seed, int workers,
                              BlockFn fn) {
    std::vector<State> states(kParallelBlocks);
    const std::uint64_t base = n / kParallelBlocks;
    const std::uint64_t extra = n % kParallelBlocks;
    auto block_count = [&](int k) {
        return base + (static_cast<std::uint64_t>(k) < extra ? 1 : 0);
    };

    workers = resolve_workers(workers);
    if (workers <= 1) {
        for (int k = 0; k < kParallelBlocks; ++k) {
            RngStream rng(seed, static_cast<std::uint64_t>(k));
            fn(states[k], rng, block_count(k), k);
        }
        return states;
    }

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= kParallelBlocks) return;
            RngStream rng(seed, static_cast<std::uint64_t>(k));
            fn(states[k], rng, block_count(k), k);
        }
    };
    std::vector<std::thread> pool;
    int nthreads = std::min(workers, kParallelBlocks);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return states;
}

}  // namespace dsm
