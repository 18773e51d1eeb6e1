#pragma once

#include "bandext/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bandext {

/// Run fn(trial_id) for trial_id = 0..count-1 on up to `jobs` threads.
///
/// fn must write its result into a slot owned by trial_id; the caller reduces
/// in id order afterwards, so results do not depend on the thread count.
/// If any trial throws, the failure with the smallest id is rethrown as
/// TrialFailure after all workers stop.
template <class Fn>
void for_each_trial(std::size_t count, unsigned jobs, Fn&& fn)
{
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::uint64_t failed_id = std::numeric_limits<std::uint64_t>::max();
    std::string failed_what;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t id = next.fetch_add(1);
            if (id >= count) {
                return;
            }
            try {
                fn(static_cast<std::uint64_t>(id));
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                if (id < failed_id) {
                    failed_id = id;
                    failed_what = e.what();
                }
                failed.store(true);
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
    }
    if (failed) {
        throw TrialFailure(failed_id, failed_what);
    }
}

} // namespace bandext
