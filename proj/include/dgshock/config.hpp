#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dgshock/simulation.hpp"

namespace dgshock {

/// Plain `key = value` lines; `#` starts a comment. Keys: problem, k, n,
/// scale, indicator, mode, mw_fraction, kxrcf_threshold, tvb_constant,
/// variables, window, veto, limiting, cfl, tfinal, dt, cadence.
std::string render_config(const RunConfig& config);

/// Values override `base`; unknown keys and malformed values throw
/// std::invalid_argument naming the line.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace dgshock
