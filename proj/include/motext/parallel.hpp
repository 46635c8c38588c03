#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace motext {

/// Runs fn(i) for i in [0, n) on up to `threads` threads; results must be
/// written to per-index slots so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(size_t n, int threads, Fn&& fn)
{
    const size_t workers = std::min<size_t>(static_cast<size_t>(std::max(threads, 1)), n);
    if (workers <= 1 || n < 16) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (size_t k = 0; k < workers; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (size_t i = k; i < n; i += workers)
                    fn(i);
            }
            catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace motext
