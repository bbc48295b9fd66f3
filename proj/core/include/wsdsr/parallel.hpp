#pragma once

#include <functional>

namespace wsdsr {

/// Number of worker threads the library will use. Defaults to the hardware
/// concurrency; the SR_THREADS environment variable caps it.
int worker_count();

/// Runs fn(i) for i in [0, n). Work items must be independent; each item may
/// only write state owned by its own index, so results do not depend on the
/// scheduling or on worker_count().
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace wsdsr
