#pragma once

#include <cstddef>
#include <functional>

namespace asymlat {

// Runs fn(i) for i in [0, n). Worker count comes from ASYMLAT_THREADS
// (0 or unset = hardware concurrency). Results must not depend on order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace asymlat
