#pragma once

#include <cstdint>

namespace qttdft {

/// Number of worker threads for parallel kernels. Honors the QTTDFT_THREADS
/// environment variable (values < 1 are ignored); otherwise the OpenMP
/// default. Always >= 1, and 1 when built without OpenMP.
int thread_count();

/// True when a loop of `work` elements is worth fanning out.
bool should_parallelize(std::int64_t work);

} // namespace qttdft
