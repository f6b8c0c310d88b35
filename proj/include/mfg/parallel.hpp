#pragma once

#include <functional>

namespace mfg {

/// Worker count for parallel_for; 1 by default. Thread count never changes
/// results: every index writes its own output slot.
void set_num_threads(int k);
int num_threads();

/// Runs fn(i) for i in [begin, end), chunked over the configured workers.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace mfg
