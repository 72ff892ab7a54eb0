#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "tcrain/grid.hpp"

namespace tcrain {

// ASCII grid: one "KEY value" header line each for NCOLS, NROWS, XLLCORNER,
// YLLCORNER, CELLSIZE and optionally NODATA_VALUE (default -9999), PRECISION
// (default 6) and PROJECTION (GEOGRAPHIC | SINUSOIDAL). Keys are
// case-insensitive. Then one line per row, north to south.

Grid read_ascii_grid(std::string_view text);
std::string write_ascii_grid(const Grid& grid);

Grid read_ascii_grid_file(const std::filesystem::path& path);
void write_ascii_grid_file(const std::filesystem::path& path, const Grid& grid);

/// Daily total from rate grids (mm/hr): per-cell sum of rate * step_hours.
/// A cell is nodata only where every input is nodata.
Grid accumulate_daily(std::span<const Grid> rate_grids, double step_hours);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace tcrain
