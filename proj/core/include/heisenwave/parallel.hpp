#pragma once

namespace heisenwave {

/// Worker count for data-parallel loops. Capped by HEISENWAVE_THREADS when set.
int thread_count();

}  // namespace heisenwave
