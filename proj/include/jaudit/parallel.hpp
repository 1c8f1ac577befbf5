#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace jaudit {

// Chunked parallel loop over [0, n). Work items must be independent and
// write only to their own slot; every RNG consumer derives its stream from
// the item index, so the result never depends on the thread count.
// The first exception thrown by any item is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const auto t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::exception_ptr err;
    std::mutex err_mutex;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n && !failed.load(std::memory_order_relaxed); i += t) {
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(err_mutex);
                    if (!err) err = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace jaudit
