#pragma once

// Order-preserving parallel helpers. Results always come back in index
// order, so output never depends on the worker count.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace amalg::detail {

template <typename T, typename F>
auto parallel_map(std::size_t count, int workers, F && fn) -> std::vector<T>
{
    std::vector<std::optional<T>> slots(count);
    std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
    if (threads <= 1) {
        std::vector<T> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(fn(i));
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < count;) {
            try {
                slots[i].emplace(fn(i));
            }
            catch (...) {
                std::lock_guard lock(error_mutex);
                if (! error)
                    error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto & t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);

    std::vector<T> out;
    out.reserve(count);
    for (auto & s : slots)
        out.push_back(std::move(*s));
    return out;
}

/// Lowest index whose fn result is engaged, with that result. Work proceeds
/// in batches of `workers` items so a hit early on stops the search.
template <typename T, typename F>
auto parallel_find_first(std::size_t count, int workers, F && fn) -> std::optional<std::pair<std::size_t, T>>
{
    std::size_t batch = static_cast<std::size_t>(std::max(1, workers));
    for (std::size_t start = 0; start < count; start += batch) {
        std::size_t len = std::min(batch, count - start);
        auto results = parallel_map<std::optional<T>>(len, workers, [&](std::size_t i) { return fn(start + i); });
        for (std::size_t i = 0; i < len; ++i)
            if (results[i])
                return std::pair{start + i, std::move(*results[i])};
    }
    return std::nullopt;
}

} // namespace amalg::detail
