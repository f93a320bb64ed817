#pragma once

#include <cstddef>
#include <functional>

namespace entwalk {

// Worker cap: ENTWALK_THREADS when set (minimum 1), hardware concurrency
// otherwise.
int worker_cap();

// Runs fn(i) for i in [0, count) on up to worker_cap() threads. Work items
// must write to disjoint state; ordering across items is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace entwalk
