#pragma once

/// @file parallel.hpp
/// @brief Ordered fan-out over independent tasks. Results are returned in
/// task order so callers can merge deterministically.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace nrlab {

class Workers {
public:
    Workers() = default;
    explicit Workers(unsigned count) : count_(std::max(1u, count)) {}

    static Workers hardware() {
        return Workers(std::max(1u, std::thread::hardware_concurrency()));
    }

    unsigned count() const { return count_; }

private:
    unsigned count_ = 1;
};

/// Runs fn(i) for i in [0, tasks) on up to workers.count() threads and
/// returns the results indexed by i. The first exception (by task index) is
/// rethrown after all threads join.
template <class T, class Fn>
std::vector<T> ordered_map(std::size_t tasks, Workers workers, Fn&& fn) {
    std::vector<T> out(tasks);
    if (tasks == 0) return out;
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers.count(), tasks));
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks; ++i) out[i] = fn(i);
        return out;
    }

    std::vector<std::exception_ptr> errors(tasks);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

/// Splits [lo, hi] into contiguous pieces of at most `width` integers.
struct Chunk {
    std::uint64_t lo;
    std::uint64_t hi;
};

inline std::vector<Chunk> split_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t width) {
    std::vector<Chunk> out;
    if (lo > hi || width == 0) return out;
    for (std::uint64_t a = lo;;) {
        const std::uint64_t b = (hi - a < width - 1) ? hi : a + width - 1;
        out.push_back({a, b});
        if (b == hi) break;
        a = b + 1;
    }
    return out;
}

} // namespace nrlab
