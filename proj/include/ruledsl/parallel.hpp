#pragma once

#include <cstddef>
#include <functional>

namespace ruledsl {

/// Worker count used by grid evaluation. Defaults to 1.
void set_threads(unsigned n);
unsigned threads();

/// Calls body(i) for i in [0, n), split into contiguous blocks across the
/// configured workers. Results must be written to per-index slots so output
/// does not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ruledsl
