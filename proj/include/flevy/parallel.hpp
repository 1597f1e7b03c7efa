#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace flevy {

/// Worker count from FLEVY_WORKERS when set, else the hardware concurrency.
int default_worker_count();

/// Runs body(i) for i in [0, count) on `workers` threads. Tasks are claimed
/// in contiguous blocks by index; results must be written per index so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace flevy
