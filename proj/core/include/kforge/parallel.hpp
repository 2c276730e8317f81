#pragma once

#include <cstddef>
#include <functional>

namespace kforge {

/// Worker cap for internal parallel loops. Reads KSPACE_FORGE_THREADS once;
/// unset or invalid falls back to the hardware concurrency.
int max_threads();

/// Runs fn(begin, end) over disjoint chunks of [0, n). All chunks write to
/// disjoint data, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace kforge
