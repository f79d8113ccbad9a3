#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace snapbm {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
/// worker. Exceptions are rethrown on the calling thread (first one wins).
template <class Fn>
void parallel_chunks(long n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (n <= 0) return;
    if (threads <= 1 || n == 1) {
        fn(0L, n);
        return;
    }
    long nchunks = std::min<long>(threads, n);
    long per = (n + nchunks - 1) / nchunks;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nchunks));
    for (long c = 0; c < nchunks; ++c) {
        long b = c * per;
        long e = std::min(n, b + per);
        if (b >= e) break;
        pool.emplace_back([&, b, e, c] {
            try {
                fn(b, e);
            } catch (...) {
                errors[static_cast<size_t>(c)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

}  // namespace snapbm
