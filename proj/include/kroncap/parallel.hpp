// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace kroncap {

/// Runs fn(begin, end) over a static partition of [0, count) on up to
/// `threads` workers. Exceptions are captured and the first one rethrown
/// after all workers join. Results must be written to per-index slots so
/// the outcome does not depend on the partition.
inline void parallel_for(size_t count, int threads,
                         const std::function<void(size_t, size_t)>& fn) {
    const size_t workers = std::max<size_t>(
        1, std::min<size_t>(static_cast<size_t>(std::max(threads, 1)), count));
    if (workers == 1) {
        fn(0, count);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const size_t chunk = (count + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t begin = w * chunk;
        const size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace kroncap
