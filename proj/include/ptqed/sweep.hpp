// Deterministic parallel index sweep used by grid-valued operations.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

#include "ptqed/errors.hpp"

namespace ptqed {

// Runs fn(i) for every i in [0, n). jobs <= 1 (or n < 2) runs inline. Each
// worker owns the strided index set {w, w + workers, ...} and visits it in
// increasing order, so the index-to-worker assignment depends only on
// (n, jobs), never on timing. fn must confine its writes to per-index slots;
// values then cannot depend on the worker count. If calls throw, the
// exception raised at the smallest failing index per worker, minimized over
// workers, is rethrown after every worker has finished — a deterministic
// choice.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs < 1) throw ValidationError("parallel_for: jobs must be >= 1");
    const std::size_t workers = std::min(static_cast<std::size_t>(jobs), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> error_index(workers, std::numeric_limits<std::size_t>::max());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&errors, &error_index, &fn, n, workers, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    error_index[w] = i;
                    return;
                }
            }
        });
    }
    for (auto& worker : pool) worker.join();
    std::size_t first = std::numeric_limits<std::size_t>::max();
    std::exception_ptr chosen;
    for (std::size_t w = 0; w < workers; ++w) {
        if (errors[w] && error_index[w] < first) {
            first = error_index[w];
            chosen = errors[w];
        }
    }
    if (chosen) std::rethrow_exception(chosen);
}

}  // namespace ptqed
