#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace flsim {

/// 0 means "use the hardware concurrency"; anything else is taken as-is.
inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Run body(row) for row in [0, n_rows) on n_threads threads using a
/// static partition (thread k takes rows k, k+n_threads, ...). Because
/// each row is produced by exactly one thread and rows do not interact,
/// results are bit-identical for every thread count. Exceptions from
/// workers are rethrown on the calling thread.
inline void parallel_rows(int n_rows, int n_threads, const std::function<void(int)>& body) {
    n_threads = resolve_thread_count(n_threads);
    if (n_threads <= 1 || n_rows <= 1) {
        for (int row = 0; row < n_rows; ++row) body(row);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
    for (int k = 0; k < n_threads; ++k) {
        workers.emplace_back([&, k] {
            try {
                for (int row = k; row < n_rows; row += n_threads) body(row);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        });
    }
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace flsim
