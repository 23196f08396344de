#include "discdist/concurrency.hpp"

#include <algorithm>
#include <atomic>

namespace discdist {

namespace {

std::atomic<int> g_max_threads{0};

} // namespace

int max_threads() {
    int cap = g_max_threads.load(std::memory_order_relaxed);
    if (cap <= 0) {
        cap = static_cast<int>(std::thread::hardware_concurrency());
        if (cap <= 0) cap = 1;
    }
    return cap;
}

void set_max_threads(int count) {
    g_max_threads.store(std::max(count, 1), std::memory_order_relaxed);
}

} // namespace discdist
