#pragma once

#include <stdexcept>
#include <string>

namespace dgshock {

/// Raised when a state has non-positive density or pressure.
/// `element` is -1 when the state is not attached to a mesh element.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(const std::string& what, int element = -1, int step = -1)
      : std::runtime_error(what), element_(element), step_(step) {}

  int element() const noexcept { return element_; }
  int step() const noexcept { return step_; }

 private:
  int element_;
  int step_;
};

/// Multiwavelet level requested below the finest-but-one level.
class LevelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Indication vector cannot be partitioned into boxplot windows.
class PartitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dgshock
