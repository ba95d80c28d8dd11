#pragma once

#include <cstddef>
#include <functional>

namespace ulln {

/// Number of workers used by parallel_for. Defaults to hardware concurrency.
std::size_t worker_count();

/// Sets the worker count; 0 restores the hardware default.
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
///
/// Indices are handed out dynamically; body must only write to slots it owns.
/// The first exception thrown by any body is rethrown on the calling thread
/// after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ulln
