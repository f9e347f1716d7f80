#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace gpur {

inline int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Evaluates fn(0..n-1) on up to `jobs` threads. Results come back in index order, so output does
// not depend on scheduling. The exception of the lowest failing index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)> &fn) {
    std::vector<std::optional<T>> out(n);
    std::vector<std::exception_ptr> err(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                out[i].emplace(fn(i));
            } catch (...) {
                err[i] = std::current_exception();
            }
        }
    };
    int t = std::clamp<int>(jobs, 1, int(std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int i = 1; i < t; i++)
        pool.emplace_back(worker);
    worker();
    for (auto &th : pool)
        th.join();
    std::vector<T> res;
    res.reserve(n);
    for (std::size_t i = 0; i < n; i++) {
        if (err[i])
            std::rethrow_exception(err[i]);
        res.push_back(std::move(*out[i]));
    }
    return res;
}

}  // namespace gpur
