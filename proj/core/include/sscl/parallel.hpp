#pragma once

#include <cstddef>
#include <functional>

namespace sscl {

/// Number of hardware threads, at least 1.
std::size_t default_threads() noexcept;

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Work items must write
/// only to their own slots; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace sscl
