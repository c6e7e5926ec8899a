#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fbvp {

/// Worker count for internal loops: FBVP_THREADS when set (0 means serial),
/// otherwise the hardware concurrency.
std::size_t thread_count();

/// Calls body(i) for every i in [0, n). Each index is handled exactly once and
/// by one thread, so writes to per-index slots need no synchronisation and
/// results do not depend on the thread count. The exception from the lowest
/// failing chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fbvp
