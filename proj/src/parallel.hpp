#pragma once

#include <exception>
#include <mutex>

namespace dgshock::detail {

/// Captures the first exception thrown inside an OpenMP worksharing loop so
/// it can be rethrown on the calling thread.
class ExceptionCollector {
 public:
  template <typename F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!first_) {
        first_ = std::current_exception();
      }
    }
  }

  void rethrow() const {
    if (first_) {
      std::rethrow_exception(first_);
    }
  }

 private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

}  // namespace dgshock::detail
