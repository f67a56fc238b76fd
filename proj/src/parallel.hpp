// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wiretap::detail {

/// Runs fn(job) for every job in [0, n_jobs) on a pool of worker threads.
/// Jobs must write to disjoint state; the first exception is rethrown.
template <typename Fn>
void parallel_for(std::uint64_t n_jobs, Fn&& fn) {
  const std::uint64_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t workers = std::min(hw, n_jobs);
  if (workers <= 1) {
    for (std::uint64_t j = 0; j < n_jobs; ++j) fn(j);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t j = next++; j < n_jobs; j = next++) {
          try {
            fn(j);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n_jobs;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace wiretap::detail
