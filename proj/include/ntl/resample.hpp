#pragma once

#include <cstdint>

#include "ntl/grid.hpp"

namespace ntl {

// Fraction of source cells labelled class_label among the non-missing source
// cells whose pixel-center falls in each target cell. Target cells that
// receive no source center are missing. Both grids must share one planar
// coordinate frame; nothing checks that.
RasterGrid class_fraction_resample(const IntRaster& src, const GridSpec& target, std::int64_t class_label);

}  // namespace ntl
