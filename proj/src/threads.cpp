#include "energylab/threads.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace energylab {

namespace {

int env_threads() {
    const char* s = std::getenv("ENERGYLAB_THREADS");
    if (s == nullptr) return 0;
    const int v = std::atoi(s);
    return v > 0 ? v : 0;
}

std::atomic<int> g_override{-1};

}  // namespace

int thread_count() {
    const int o = g_override.load(std::memory_order_relaxed);
    if (o > 0) return o;
    static const int from_env = env_threads();
    if (from_env > 0) return from_env;
    return omp_get_max_threads();
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : -1, std::memory_order_relaxed); }

}  // namespace energylab
