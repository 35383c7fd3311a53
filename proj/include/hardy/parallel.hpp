#pragma once

#include <cstddef>
#include <functional>

namespace hardy {

/// Runs task(i) for i in [0, count) on the available hardware threads. Calls made from inside
/// a task run serially on the calling thread. The caller owns result ordering: tasks write to
/// their own slots and any reduction happens afterwards in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

/// Number of worker threads parallel_for may use.
std::size_t worker_count() noexcept;

}  // namespace hardy
