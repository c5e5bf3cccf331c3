#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace cpm {

// CPM_LAB_THREADS if set and positive, else hardware concurrency
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Results are written by index,
// so reductions done afterwards in index order are deterministic. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
    return out;
}

}  // namespace cpm
