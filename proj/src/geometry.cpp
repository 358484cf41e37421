#include "ntl/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ntl {

std::optional<BoundingBox> bounding_box(const PolygonSet& poly) {
    std::optional<BoundingBox> box;
    for (const auto& ring : poly.rings) {
        for (const auto& p : ring) {
            if (!box) {
                box = BoundingBox{p.x, p.y, p.x, p.y};
                continue;
            }
            box->min_x = std::min(box->min_x, p.x);
            box->min_y = std::min(box->min_y, p.y);
            box->max_x = std::max(box->max_x, p.x);
            box->max_y = std::max(box->max_y, p.y);
        }
    }
    return box;
}

bool point_in_polygon(Coord p, const PolygonSet& poly) {
    bool inside = false;
    for (const auto& ring : poly.rings) {
        const std::size_t n = ring.size();
        if (n < 3) continue;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Coord& a = ring[i];
            const Coord& b = ring[j];
            if ((a.y < p.y) == (b.y < p.y)) continue;
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

ZoneMask rasterize_polygon(const PolygonSet& poly, const GridSpec& spec) {
    spec.require_valid();
    ZoneMask mask{spec, std::vector<std::uint8_t>(spec.size(), 0)};
    const auto box = bounding_box(poly);
    if (!box) return mask;

    // Restrict the scan to rows/cols whose centers can fall in the bbox.
    const double cs = spec.cell_size;
    const int c0 = std::max(0, static_cast<int>(std::floor((box->min_x - spec.x_origin) / cs - 0.5)));
    const int c1 = std::min(spec.ncols - 1, static_cast<int>(std::ceil((box->max_x - spec.x_origin) / cs - 0.5)));
    const double top = spec.y_origin + spec.nrows * cs;
    const int r0 = std::max(0, static_cast<int>(std::floor((top - box->max_y) / cs - 0.5)));
    const int r1 = std::min(spec.nrows - 1, static_cast<int>(std::ceil((top - box->min_y) / cs - 0.5)));

    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
            if (point_in_polygon(spec.center(r, c), poly)) mask.inside[spec.offset(r, c)] = 1;
    return mask;
}

std::optional<double> zonal_mean(const RasterGrid& raster, const ZoneMask& mask) {
    if (!(raster.spec == mask.spec)) throw ContractViolation("zonal_mean: raster and mask grid specs differ");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < raster.size(); ++i) {
        if (!mask.inside[i] || raster.is_missing(i)) continue;
        sum += raster.values[i];
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

}  // namespace ntl
