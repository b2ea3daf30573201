#pragma once

#include <cstdint>

namespace dgshock::tools {

/// Quick property checks of the detector, the multiwavelet transform, the
/// limiter and the solver. Prints one line per check; returns the number of
/// failures.
int run_selftest(std::uint64_t seed);

}  // namespace dgshock::tools
