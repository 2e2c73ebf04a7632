#pragma once

#include <functional>

namespace pfapipe {

// Run-wide worker budget shared by all internally parallel operations.
// 0 restores the hardware default.
void set_max_threads(int n);
int max_threads();

// Splits [0,count) into `chunks` contiguous ranges and runs fn(chunk, begin, end).
// The chunk layout depends only on (count, chunks), never on the thread budget,
// so per-chunk accumulation followed by an in-order reduction is deterministic.
void parallel_chunks(int count, int chunks, const std::function<void(int, int, int)>& fn);

// Convenience: one item per index, chunked automatically.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace pfapipe
