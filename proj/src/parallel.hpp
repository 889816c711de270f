#pragma once

#include <functional>

namespace eh {

/// Worker cap: EXTREMAL_HARNACK_THREADS if set (clamped to [1, 64]),
/// otherwise the hardware concurrency.
int worker_count();

/// Runs fn(begin, end) over contiguous chunks of [begin, end), one chunk per
/// worker. Chunk boundaries depend only on the range and worker count, and
/// callers must keep per-chunk results order-independent, so outputs do not
/// depend on scheduling.
void parallel_for(long begin, long end, const std::function<void(long, long)>& fn);

} // namespace eh
