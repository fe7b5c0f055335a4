#pragma once

namespace energylab {

// Number of threads used by internal parallel regions. Resolved once from
// ENERGYLAB_THREADS (0 or unset = all available), unless overridden.
int thread_count();

// Override the thread cap at runtime; 0 restores the environment default.
void set_thread_count(int n);

}  // namespace energylab
