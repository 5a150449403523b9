#pragma once

#include <cstddef>
#include <functional>

namespace rootmirror {

// Number of worker threads: hardware concurrency capped by ROOTMIRROR_THREADS.
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
// independent; if several bodies throw, the exception of the lowest index is
// rethrown so failures are reported deterministically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rootmirror
