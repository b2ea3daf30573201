#include "dgshock/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dgshock {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, std::string_view msg) {
  throw std::invalid_argument(fmt::format("config line {}: {}", line, msg));
}

double to_double(std::string_view v, int line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    fail(line, fmt::format("'{}' is not a number", v));
  }
  return x;
}

int to_int(std::string_view v, int line) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    fail(line, fmt::format("'{}' is not an integer", v));
  }
  return x;
}

bool to_bool(std::string_view v, int line) {
  if (v == "true" || v == "1" || v == "yes") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    return false;
  }
  fail(line, fmt::format("'{}' is not a boolean", v));
}

std::string_view veto_name(outlier::VetoRule r) {
  return r == outlier::VetoRule::neighbor_fences ? "neighbor_fences" : "shifted_window";
}

}  // namespace

std::string render_config(const RunConfig& c) {
  std::string vars;
  for (std::size_t i = 0; i < c.indicator.variables.size(); ++i) {
    vars += (i ? "," : "") + std::to_string(c.indicator.variables[i]);
  }
  std::string s;
  s += fmt::format("problem = {}\n", c.problem);
  s += fmt::format("k = {}\n", c.degree);
  s += fmt::format("n = {}\n", c.level);
  s += fmt::format("scale = {}\n", c.scale);
  s += fmt::format("indicator = {}\n", to_string(c.indicator.kind));
  s += fmt::format("mode = {}\n", to_string(c.indicator.mode));
  s += fmt::format("mw_fraction = {}\n", c.indicator.mw_fraction);
  s += fmt::format("kxrcf_threshold = {}\n", c.indicator.kxrcf_threshold);
  s += fmt::format("tvb_constant = {}\n", c.indicator.tvb_constant);
  s += fmt::format("variables = {}\n", vars);
  s += fmt::format("window = {}\n", c.indicator.detector.window);
  s += fmt::format("veto = {}\n", veto_name(c.indicator.detector.veto));
  s += fmt::format("limiting = {}\n", c.limiting ? "true" : "false");
  s += fmt::format("cfl = {}\n", c.cfl);
  s += fmt::format("tfinal = {}\n", c.t_final);
  s += fmt::format("dt = {}\n", c.fixed_dt);
  s += fmt::format("cadence = {}\n", to_string(c.cadence));
  return s;
}

RunConfig parse_config(std::string_view text, RunConfig c) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(line_no, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "problem") {
        c.problem = std::string(value);
      } else if (key == "k") {
        c.degree = to_int(value, line_no);
      } else if (key == "n") {
        c.level = to_int(value, line_no);
      } else if (key == "scale") {
        c.scale = to_int(value, line_no);
      } else if (key == "indicator") {
        c.indicator.kind = parse_indicator(value);
      } else if (key == "mode") {
        c.indicator.mode = parse_mode(value);
      } else if (key == "mw_fraction") {
        c.indicator.mw_fraction = to_double(value, line_no);
      } else if (key == "kxrcf_threshold") {
        c.indicator.kxrcf_threshold = to_double(value, line_no);
      } else if (key == "tvb_constant") {
        c.indicator.tvb_constant = to_double(value, line_no);
      } else if (key == "variables") {
        c.indicator.variables.clear();
        std::string_view rest = value;
        while (!rest.empty()) {
          const auto comma = std::min(rest.find(','), rest.size());
          c.indicator.variables.push_back(to_int(trim(rest.substr(0, comma)), line_no));
          rest = comma < rest.size() ? rest.substr(comma + 1) : std::string_view{};
        }
      } else if (key == "window") {
        c.indicator.detector.window = to_int(value, line_no);
      } else if (key == "veto") {
        if (value == "neighbor_fences") {
          c.indicator.detector.veto = outlier::VetoRule::neighbor_fences;
        } else if (value == "shifted_window") {
          c.indicator.detector.veto = outlier::VetoRule::shifted_window;
        } else {
          fail(line_no, fmt::format("unknown veto rule '{}'", value));
        }
      } else if (key == "limiting") {
        c.limiting = to_bool(value, line_no);
      } else if (key == "cfl") {
        c.cfl = to_double(value, line_no);
      } else if (key == "tfinal") {
        c.t_final = to_double(value, line_no);
      } else if (key == "dt") {
        c.fixed_dt = to_double(value, line_no);
      } else if (key == "cadence") {
        c.cadence = parse_cadence(value);
      } else {
        fail(line_no, fmt::format("unknown key '{}'", key));
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("config line", 0) == 0) {
        throw;
      }
      fail(line_no, what);
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config '" + path.string() + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace dgshock
