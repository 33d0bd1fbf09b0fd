#pragma once

#include <cstddef>
#include <functional>

namespace qcs {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Work is split
// into contiguous static blocks, one per worker, so the assignment of items
// to workers is a pure function of (count, workers). Items must be
// independent: no reductions happen here, every item writes its own output,
// and results are byte-identical whether workers is 1 or 100.
//
// workers <= 1 runs inline on the calling thread. Exceptions thrown by fn
// are captured and the first one is rethrown after all threads join.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace qcs
