#pragma once

#include <filesystem>
#include <string>

#include "ntl/grid.hpp"

namespace ntl {

// ESRI ASCII Grid reader/writer. Header keys are case-insensitive and may
// appear in any order: ncols, nrows, xllcorner|xllcenter, yllcorner|yllcenter,
// cellsize, NODATA_value (optional). Cells equal to NODATA are missing.

RasterGrid read_grid(const std::filesystem::path& path);
IntRaster read_int_grid(const std::filesystem::path& path);

RasterGrid parse_grid(const std::string& text, const std::string& source = "<memory>");
IntRaster parse_int_grid(const std::string& text, const std::string& source = "<memory>");

// Header-only read, used to check grid consistency without loading cells.
GridSpec read_grid_spec(const std::filesystem::path& path);

// Values are printed in shortest round-trip form. Throws ContractViolation if
// a valid cell holds the nodata value.
void write_grid(const RasterGrid& grid, const std::filesystem::path& path, double nodata = -9999.0);
void write_grid(const IntRaster& grid, const std::filesystem::path& path, std::int64_t nodata = -9999);

std::string format_grid(const RasterGrid& grid, double nodata = -9999.0);
std::string format_grid(const IntRaster& grid, std::int64_t nodata = -9999);

}  // namespace ntl
