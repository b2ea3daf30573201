#include "dgshock/output.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "dgshock/config.hpp"
#include "dgshock/indicators.hpp"

namespace dgshock::output {

namespace {

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

const char* name_2d(int v) {
  static const char* names[] = {"density", "x_momentum", "y_momentum", "energy"};
  return names[v];
}

}  // namespace

void write_history(const std::filesystem::path& path, const TroubledCellHistory& history) {
  auto out = open(path);
  out << (history.dimension == 2 ? "step,time,element_index,element_j\n"
                                 : "step,time,element_index\n");
  for (const auto& e : history.entries) {
    for (int c : e.cells) {
      if (history.dimension == 2) {
        out << fmt::format("{},{},{},{}\n", e.step, e.time, c % history.nx, c / history.nx);
      } else {
        out << fmt::format("{},{},{}\n", e.step, e.time, c);
      }
    }
  }
  finish(out, path);
}

void write_final(const std::filesystem::path& path, const DGField1D& u, const Discretization1D& d) {
  auto out = open(path);
  out << "x,variable,cell_average,left_trace,right_trace\n";
  for (int v = 0; v < u.num_vars(); ++v) {
    const std::string name = indicators::variable_name(d.physics, v);
    for (int j = 0; j < u.num_cells(); ++j) {
      const auto m = u.modes(j, v);
      out << fmt::format("{},{},{},{},{}\n", d.mesh.center(j), name, u.average(j, v),
                         d.basis.evaluate(m, -1.0), d.basis.evaluate(m, 1.0));
    }
  }
  finish(out, path);
}

void write_final(const std::filesystem::path& path, const DGField2D& u, const Discretization2D& d) {
  auto out = open(path);
  out << "x,y,variable,cell_average,left_trace,right_trace\n";
  for (int v = 0; v < u.num_vars(); ++v) {
    for (int j = 0; j < u.ny(); ++j) {
      for (int i = 0; i < u.nx(); ++i) {
        out << fmt::format("{},{},{},{},{},{}\n", d.mesh.x().center(i), d.mesh.y().center(j),
                           name_2d(v), u.average(i, j, v),
                           u.value(d.basis, i, j, -1.0, 0.0)[v],
                           u.value(d.basis, i, j, 1.0, 0.0)[v]);
      }
    }
  }
  finish(out, path);
}

void write_density_pgm(const std::filesystem::path& path, const DGField2D& u) {
  double lo = u.average(0, 0, 0);
  double hi = lo;
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      lo = std::min(lo, u.average(i, j, 0));
      hi = std::max(hi, u.average(i, j, 0));
    }
  }
  const double range = hi > lo ? hi - lo : 1.0;
  auto out = open(path);
  out << fmt::format("P2\n{} {}\n255\n", u.nx(), u.ny());
  for (int j = u.ny() - 1; j >= 0; --j) {
    for (int i = 0; i < u.nx(); ++i) {
      const int g = static_cast<int>(std::lround(255.0 * (u.average(i, j, 0) - lo) / range));
      out << std::clamp(g, 0, 255) << (i + 1 < u.nx() ? ' ' : '\n');
    }
  }
  finish(out, path);
}

void write_timing(const std::filesystem::path& path, const RunConfig& config, const PhaseTimes& t,
                  const RunStats& stats) {
  auto out = open(path);
  out << fmt::format("problem {}\nindicator {}\nmode {}\nk {}\n", config.problem,
                     to_string(config.indicator.kind), to_string(config.indicator.mode),
                     config.degree);
  out << fmt::format("phase seconds\n");
  out << fmt::format("rhs {:.6f}\nindicate {:.6f}\ndetect {:.6f}\nlimit {:.6f}\ntotal {:.6f}\n",
                     t.rhs, t.indicate, t.detect, t.limit, t.total);
  out << fmt::format("steps {}\nfinal_time {}\n", stats.steps, stats.final_time);
  out << fmt::format("limited_cell_stages {}\nmodified_cell_stages {}\nfallbacks {}\n",
                     stats.limiter.flagged, stats.limiter.modified, stats.limiter.fallbacks);
  out << fmt::format("safeguarded_cell_stages {}\n", stats.safeguarded);
  out << fmt::format("mean_flagged_fraction {:.6f}\nmax_flagged_fraction {:.6f}\n",
                     stats.mean_flagged_fraction, stats.max_flagged_fraction);
  out << fmt::format("min_density {}\nmin_pressure {}\n", stats.min_density, stats.min_pressure);
  finish(out, path);
}

namespace {

void prepare(const std::filesystem::path& dir, const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  }
  auto out = open(dir / "config.txt");
  out << render_config(config);
  finish(out, dir / "config.txt");
}

}  // namespace

void write_run(const std::filesystem::path& dir, const RunConfig& config, const Result1D& result) {
  prepare(dir, config);
  write_history(dir / "history.csv", result.history);
  write_final(dir / "final.csv", result.field, result.disc);
  write_timing(dir / "timing.txt", config, result.timing, result.stats);
}

void write_run(const std::filesystem::path& dir, const RunConfig& config, const Result2D& result) {
  prepare(dir, config);
  write_history(dir / "history.csv", result.history);
  write_final(dir / "final.csv", result.field, result.disc);
  write_density_pgm(dir / "density.pgm", result.field);
  write_timing(dir / "timing.txt", config, result.timing, result.stats);
}

}  // namespace dgshock::output
