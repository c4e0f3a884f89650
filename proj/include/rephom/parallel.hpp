#pragma once

#include <cstddef>
#include <functional>

namespace rephom {

// Worker count: set_worker_count wins, else the REPHOM_WORKERS environment
// variable, else 1.
int worker_count();
void set_worker_count(int n);

// Runs body(i) for i in [0, n). Callers write results into slot i, so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rephom
