// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace weft {

// Hardware cache counters for one measured region. Capture is best effort:
// unprivileged containers, non-Linux hosts, and locked-down kernels all
// leave available == false with a note, and the run proceeds regardless.
struct HwCounters {
  bool available = false;
  std::uint64_t cache_references = 0;
  std::uint64_t cache_misses = 0;
  std::string note;  // reason when unavailable
};

// RAII capture scope: counting starts at construction and stop() freezes the
// totals (idempotent; the destructor cleans up if stop() was never called).
// Counters are process-wide and inherited by threads spawned inside the
// scope, so engine workers are included.
class HwCounterScope {
 public:
  HwCounterScope();
  ~HwCounterScope();
  HwCounterScope(const HwCounterScope&) = delete;
  HwCounterScope& operator=(const HwCounterScope&) = delete;

  HwCounters stop();

 private:
  void close_fds();

  int ref_fd_ = -1;
  int miss_fd_ = -1;
  std::string note_;
};

}  // namespace weft
