#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace erp {

/// Runs body(begin, end) over [0, n) split into at most `threads` contiguous
/// chunks. The partition depends only on n and threads, and chunks never
/// share output, so results are identical for every thread count as long as
/// body writes only to its own indices.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        if (n > 0) body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace erp
