#pragma once

#include <cstddef>
#include <functional>

namespace tgrass {

/// Worker count used by parallel_for. 0 means hardware concurrency.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Runs body(i) for every i in [0, count). Indices are handed out dynamically,
/// so body must only write to state owned by index i. Calls made from inside a
/// running parallel_for execute sequentially on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tgrass
