#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nucpol {

inline std::size_t default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Applies fn to every item with at most `jobs` worker threads and returns the
// results in input order. The first exception thrown by any item is rethrown
// after all workers have joined.
template <class Item, class Fn>
auto parallel_map(const std::vector<Item>& items, std::size_t jobs, Fn&& fn)
    -> std::vector<decltype(fn(items.front()))> {
    using Result = decltype(fn(items.front()));
    std::vector<std::optional<Result>> slots(items.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            try {
                slots[i].emplace(fn(items[i]));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const std::size_t n_threads = std::min(std::max<std::size_t>(jobs, 1), items.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<Result> out;
    out.reserve(items.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace nucpol
