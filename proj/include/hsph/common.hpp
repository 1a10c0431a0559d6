#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hsph {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Thrown on precondition violations and numerical failures (non-convergence,
/// exhausted grids, overflow).
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

template <class T>
T pairwise_sum_impl(const T* data, std::size_t count) {
    if (count <= 16) {
        T acc{};
        for (std::size_t i = 0; i < count; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_impl(data, half) + pairwise_sum_impl(data + half, count - half);
}

} // namespace detail

/// Fixed-tree pairwise summation. The reduction tree depends only on the
/// element count, never on how many threads produced the terms, so results
/// are bit-identical across thread counts.
template <class T>
T pairwise_sum(std::span<const T> terms) {
    return detail::pairwise_sum_impl(terms.data(), terms.size());
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v.data(), v.size()));
}
inline cplx pairwise_sum(const std::vector<cplx>& v) {
    return pairwise_sum(std::span<const cplx>(v.data(), v.size()));
}

/// Process-wide worker count used by grid-parallel loops. 0 = one thread per
/// hardware core. Results do not depend on this setting.
void set_threads(unsigned n);
unsigned thread_count();

namespace detail {
inline unsigned& thread_setting() {
    static unsigned n = 0;
    return n;
}
} // namespace detail

inline void set_threads(unsigned n) { detail::thread_setting() = n; }

inline unsigned thread_count() {
    unsigned n = detail::thread_setting();
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

/// Splits [0, count) into contiguous ranges and runs body(begin, end) on
/// worker threads. Each index must touch only its own output slots.
template <class F>
void parallel_for(std::size_t count, F body) {
    const unsigned workers = std::min<std::size_t>(thread_count(), count);
    if (workers <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned k = 0; k < workers; ++k) {
        const std::size_t b = k * chunk;
        const std::size_t e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&body, b, e] { body(b, e); });
    }
    for (auto& t : pool) t.join();
}

} // namespace hsph
