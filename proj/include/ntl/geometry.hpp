#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ntl/grid.hpp"

namespace ntl {

using Ring = std::vector<Coord>;

// Outer rings and holes together. Membership is decided by the even-odd rule
// over all rings, so ring orientation and role do not matter. A ring may
// repeat its first vertex at the end; closure is implied otherwise.
struct PolygonSet {
    std::vector<Ring> rings;
};

struct BoundingBox {
    double min_x, min_y, max_x, max_y;
};

std::optional<BoundingBox> bounding_box(const PolygonSet& poly);

// Ray cast toward +x. An edge is counted when exactly one endpoint lies
// strictly below the ray, which settles vertices and horizontal edges.
bool point_in_polygon(Coord p, const PolygonSet& poly);

struct ZoneMask {
    GridSpec spec;
    std::vector<std::uint8_t> inside;

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto v : inside) n += v;
        return n;
    }
    bool empty() const noexcept { return count() == 0; }
};

ZoneMask rasterize_polygon(const PolygonSet& poly, const GridSpec& spec);

// Mean over cells that are inside and not missing; nullopt when there are none.
std::optional<double> zonal_mean(const RasterGrid& raster, const ZoneMask& mask);

}  // namespace ntl
