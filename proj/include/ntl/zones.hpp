#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ntl/geometry.hpp"

namespace ntl {

// One analysis unit (a zip code): polygon plus modelled damage ratio.
struct Zone {
    std::string zone_id;
    PolygonSet geometry;
    double damage_ratio = 0.0;
    std::int64_t population = 0;
};

inline ZoneMask rasterize_zone(const Zone& zone, const GridSpec& spec) { return rasterize_polygon(zone.geometry, spec); }

// GeoJSON FeatureCollection of Polygon / MultiPolygon features with
// properties zone_id (string), damage_ratio (0..1) and population (>= 0).
// MultiPolygon parts are merged into a single ring set.
std::vector<Zone> read_zones(const std::filesystem::path& path);
std::vector<Zone> parse_zones(const std::string& text, const std::string& source = "<memory>");

std::string format_zones(const std::vector<Zone>& zones);
void write_zones(const std::vector<Zone>& zones, const std::filesystem::path& path);

}  // namespace ntl
