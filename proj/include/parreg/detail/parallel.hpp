#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace parreg {

template <typename Pred>
std::optional<std::size_t> parallel_first_index(std::size_t count, unsigned threads, Pred pred) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2 * threads) {
        for (std::size_t i = 0; i < count; ++i) {
            if (pred(i)) return i;
        }
        return std::nullopt;
    }

    std::atomic<std::size_t> best{none};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) {
                    if (i >= best.load(std::memory_order_relaxed)) return;
                    if (pred(i)) {
                        std::size_t cur = best.load();
                        while (i < cur && !best.compare_exchange_weak(cur, i)) {
                        }
                        return;
                    }
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    if (best.load() == none) return std::nullopt;
    return best.load();
}

} // namespace parreg
