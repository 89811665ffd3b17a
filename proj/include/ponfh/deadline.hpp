#pragma once

#include <chrono>

namespace ponfh {

// Wall-clock budget measured from construction.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Deadline(double seconds) : start_(Clock::now()), limit_s_(seconds) {}

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  bool expired() const { return elapsed() >= limit_s_; }
  double limit() const { return limit_s_; }

 private:
  Clock::time_point start_;
  double limit_s_;
};

}  // namespace ponfh
