// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "weft/types.hpp"

namespace weft {

// Run fn(tid) on n threads (tid 0 runs on the caller), join, and rethrow the
// first exception any of them raised.
inline void run_threads(std::uint32_t n,
                        const std::function<void(std::uint32_t)>& fn) {
  if (n == 0) throw InvalidArgument("thread count must be >= 1");
  if (n == 1) {
    fn(0);
    return;
  }
  std::exception_ptr first;
  std::mutex first_mtx;
  auto guarded = [&](std::uint32_t tid) {
    try {
      fn(tid);
    } catch (...) {
      std::lock_guard lk(first_mtx);
      if (!first) first = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n - 1);
  for (std::uint32_t t = 1; t < n; ++t) threads.emplace_back(guarded, t);
  guarded(0);
  for (auto& th : threads) th.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace weft
