#pragma once

#include <filesystem>
#include <string>

#include "dgshock/simulation.hpp"

namespace dgshock::output {

/// `step,time,element_index[,element_j]`, one row per flagged element.
void write_history(const std::filesystem::path& path, const TroubledCellHistory& history);

/// `x,variable,cell_average,left_trace,right_trace`, variable-major.
void write_final(const std::filesystem::path& path, const DGField1D& u, const Discretization1D& d);
/// `x,y,variable,...`; traces are taken along x at the element mid-line.
void write_final(const std::filesystem::path& path, const DGField2D& u, const Discretization2D& d);

/// Plain (P2) graymap of density cell averages, nx wide and ny high, top row
/// at the largest y, linearly scaled to 0..255.
void write_density_pgm(const std::filesystem::path& path, const DGField2D& u);

/// Phase breakdown and run statistics.
void write_timing(const std::filesystem::path& path, const RunConfig& config, const PhaseTimes& t,
                  const RunStats& stats);

/// All artifacts of a run into `dir` (created if missing).
void write_run(const std::filesystem::path& dir, const RunConfig& config, const Result1D& result);
void write_run(const std::filesystem::path& dir, const RunConfig& config, const Result2D& result);

}  // namespace dgshock::output
