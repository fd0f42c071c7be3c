// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace cooltrace {

/// Worker count: COOLTRACE_THREADS if set (clamped to >= 1), otherwise
/// hardware concurrency.
int max_threads();

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to
/// max_threads() threads. Acc must be default-constructible; each chunk gets
/// its own accumulator and merge(total, part) is applied in chunk order.
/// Results stay partition-independent as long as merging is associative and
/// commutative (integer counts in this codebase).
template <typename Acc, typename Body, typename Merge>
Acc parallel_accumulate(std::uint64_t n, Body body, Merge merge) {
    const std::uint64_t threads =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(max_threads()), n ? n : 1);
    if (threads <= 1) {
        Acc acc{};
        body(0, n, acc);
        return acc;
    }
    std::vector<Acc> parts(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::uint64_t chunk = n / threads;
    const std::uint64_t rem = n % threads;
    std::uint64_t begin = 0;
    for (std::uint64_t t = 0; t < threads; ++t) {
        const std::uint64_t end = begin + chunk + (t < rem ? 1 : 0);
        pool.emplace_back([&body, &parts, t, begin, end] { body(begin, end, parts[t]); });
        begin = end;
    }
    for (auto& th : pool) th.join();
    Acc total{};
    for (auto& part : parts) merge(total, part);
    return total;
}

}  // namespace cooltrace
