#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace isi2d {

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per worker.
// Work items must write to disjoint, pre-sized storage; reductions happen at
// the call site in index order, so the result is identical for any thread count.
inline void parallel_for(std::int64_t n, int threads,
                         const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    threads = std::max(1, threads);
    const std::int64_t nt = std::min<std::int64_t>(threads, n);
    if (nt == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nt);
    const std::int64_t chunk = (n + nt - 1) / nt;
    for (std::int64_t w = 0; w < nt; ++w) {
        const std::int64_t b = w * chunk;
        const std::int64_t e = std::min(n, b + chunk);
        pool.emplace_back([&fn, &errs, w, b, e] {
            try {
                if (b < e) fn(b, e);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errs)
        if (err) std::rethrow_exception(err);
}

}  // namespace isi2d
