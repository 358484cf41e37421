#pragma once

#include <optional>
#include <vector>

#include "ntl/grid.hpp"
#include "ntl/month.hpp"

namespace ntl {

using RadianceStack = TimeStack<RasterGrid>;
using QualityStack = TimeStack<IntRaster>;

enum class Dataset { vsc_ntl, vnp46a2 };

enum class ThresholdMode { none, clip, remove };

// clip: clamp valid values into [lo, hi]. remove: values outside [lo, hi]
// become missing. none: identity. Requires lo < hi.
RasterGrid threshold(const RasterGrid& raster, ThresholdMode mode, double lo = 0.0, double hi = 50.0);

// Keeps cells whose built fraction is >= min_fraction; everything else,
// including cells with a missing fraction, becomes missing.
RasterGrid apply_built_mask(const RasterGrid& raster, const RasterGrid& built_fraction, double min_fraction = 0.5);

struct PixelObservation {
    int month = 0;  // MonthIndex::ordinal()
    double value = 0.0;
    bool high_quality = false;
};

// Observations of one pixel, month strictly increasing.
struct PixelHistory {
    std::vector<PixelObservation> observations;
};

// Inverse-time-distance weighted mean of the high-quality observations in
// [t - window, t):  sum(v / (t - m)) / sum(1 / (t - m)).
// nullopt when no such observation exists.
std::optional<double> impute_pixel(const PixelHistory& history, int t, int window);

// Whether each pixel of a quality layer marks a usable observation. Missing
// quality cells are never usable.
std::vector<std::uint8_t> high_quality_mask(const IntRaster& quality, Dataset dataset);

// Low-quality pixels (bad flag, missing flag, or missing radiance) are
// replaced by impute_pixel over the pixel's own original high-quality
// history, or set missing when there is none. High-quality pixels pass
// through untouched.
RadianceStack quality_filter_and_impute(const RadianceStack& radiance, const QualityStack& quality, Dataset dataset,
                                        int window_months = 12);

}  // namespace ntl
