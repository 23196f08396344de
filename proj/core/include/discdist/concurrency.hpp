/*
 * concurrency.hpp - the thread pool policy for independent work items.
 *
 * Callers that fan out (search restarts, sample batches) write results
 * into slots indexed by the work item, so the merge order never depends
 * on scheduling and runs are reproducible at any thread count.
 */
#ifndef DISCDIST_CONCURRENCY_HPP
#define DISCDIST_CONCURRENCY_HPP

#include <exception>
#include <thread>
#include <vector>

namespace discdist {

// Process-wide cap on worker threads, default hardware_concurrency.
int max_threads();
void set_max_threads(int count);

// Runs body(i) for i = 0..count-1 on up to max_threads() threads (in the
// calling thread when one suffices).  The first exception thrown by any
// item is rethrown after all threads join.
template <typename F>
void parallel_for(int count, F&& body) {
    if (count <= 0) return;
    const int threads = std::min(count, max_threads());
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace discdist

#endif // DISCDIST_CONCURRENCY_HPP
