// Copyright (c) the weft authors.
// SPDX-License-Identifier: Apache-2.0

#include "weft/hwcounters.hpp"

#include <cerrno>
#include <cstring>

#if defined(__linux__)
#include <linux/perf_event.h>
#include <sys/ioctl.h>
#include <sys/syscall.h>
#include <unistd.h>
#endif

namespace weft {

#if defined(__linux__)

namespace {

int open_counter(std::uint64_t hw_id, int group_fd) {
  perf_event_attr attr;
  std::memset(&attr, 0, sizeof(attr));
  attr.type = PERF_TYPE_HARDWARE;
  attr.size = sizeof(attr);
  attr.config = hw_id;
  attr.disabled = group_fd == -1 ? 1 : 0;
  attr.inherit = 1;  // count worker threads spawned inside the scope
  attr.exclude_kernel = 1;
  attr.exclude_hv = 1;
  return int(syscall(SYS_perf_event_open, &attr, 0, -1, group_fd, 0));
}

bool read_counter(int fd, std::uint64_t& out) {
  std::uint64_t v = 0;
  if (fd < 0 || read(fd, &v, sizeof(v)) != ssize_t(sizeof(v))) return false;
  out = v;
  return true;
}

}  // namespace

HwCounterScope::HwCounterScope() {
  ref_fd_ = open_counter(PERF_COUNT_HW_CACHE_REFERENCES, -1);
  if (ref_fd_ < 0) {
    note_ = std::string("perf_event_open: ") + std::strerror(errno);
    return;
  }
  miss_fd_ = open_counter(PERF_COUNT_HW_CACHE_MISSES, ref_fd_);
  if (miss_fd_ < 0) {
    note_ = std::string("perf_event_open(misses): ") + std::strerror(errno);
    close_fds();
    return;
  }
  ioctl(ref_fd_, PERF_EVENT_IOC_RESET, PERF_IOC_FLAG_GROUP);
  ioctl(ref_fd_, PERF_EVENT_IOC_ENABLE, PERF_IOC_FLAG_GROUP);
}

HwCounters HwCounterScope::stop() {
  HwCounters out;
  out.note = note_;
  if (ref_fd_ < 0) {
    if (out.note.empty()) out.note = "already stopped";
    return out;
  }
  ioctl(ref_fd_, PERF_EVENT_IOC_DISABLE, PERF_IOC_FLAG_GROUP);
  bool ok = read_counter(ref_fd_, out.cache_references) &&
            read_counter(miss_fd_, out.cache_misses);
  close_fds();
  if (!ok) {
    out.note = "perf counter read failed";
    return out;
  }
  out.available = true;
  return out;
}

void HwCounterScope::close_fds() {
  if (miss_fd_ >= 0) close(miss_fd_);
  if (ref_fd_ >= 0) close(ref_fd_);
  ref_fd_ = miss_fd_ = -1;
}

#else  // !__linux__

HwCounterScope::HwCounterScope() { note_ = "no perf interface on this platform"; }

HwCounters HwCounterScope::stop() {
  HwCounters out;
  out.note = note_;
  return out;
}

void HwCounterScope::close_fds() {}

#endif

HwCounterScope::~HwCounterScope() { close_fds(); }

}  // namespace weft
