#include "ntl/zones.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ntl/errors.hpp"

namespace ntl {
namespace {

using nlohmann::json;

std::string feature_name(std::size_t index, const json& feature) {
    std::string name = "feature " + std::to_string(index);
    const auto props = feature.find("properties");
    if (props != feature.end() && props->is_object()) {
        auto id = props->find("zone_id");
        if (id != props->end() && id->is_string()) name += " (zone_id " + id->get<std::string>() + ")";
    }
    return name;
}

Ring parse_ring(const json& coords, const std::string& where) {
    if (!coords.is_array()) throw ValidationError(where + ": ring is not an array of positions");
    Ring ring;
    for (const auto& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
            throw ValidationError(where + ": bad position in ring");
        ring.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    if (ring.empty() || ring.front().x != ring.back().x || ring.front().y != ring.back().y)
        throw ValidationError(where + ": ring is not closed");
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : ring) distinct.insert({p.x, p.y});
    if (distinct.size() < 3) throw ValidationError(where + ": ring has fewer than 3 distinct vertices");
    return ring;
}

void append_polygon(const json& rings, PolygonSet& out, const std::string& where) {
    if (!rings.is_array() || rings.empty()) throw ValidationError(where + ": polygon has no rings");
    for (const auto& r : rings) out.rings.push_back(parse_ring(r, where));
}

Zone parse_feature(std::size_t index, const json& feature) {
    const std::string where = feature_name(index, feature);
    if (!feature.is_object()) throw ValidationError(where + ": not an object");

    const auto props = feature.find("properties");
    if (props == feature.end() || !props->is_object()) throw ValidationError(where + ": missing properties");
    Zone zone;

    auto id = props->find("zone_id");
    if (id == props->end()) throw ValidationError(where + ": missing property zone_id");
    if (!id->is_string()) throw ValidationError(where + ": zone_id must be a string");
    zone.zone_id = id->get<std::string>();
    if (zone.zone_id.empty()) throw ValidationError(where + ": zone_id is empty");

    auto dr = props->find("damage_ratio");
    if (dr == props->end()) throw ValidationError(where + ": missing property damage_ratio");
    if (!dr->is_number()) throw ValidationError(where + ": damage_ratio must be a number");
    zone.damage_ratio = dr->get<double>();
    if (!(zone.damage_ratio >= 0.0 && zone.damage_ratio <= 1.0))
        throw ValidationError(where + ": damage_ratio outside [0,1]");

    auto pop = props->find("population");
    if (pop == props->end()) throw ValidationError(where + ": missing property population");
    if (!pop->is_number_integer() && !(pop->is_number_float() && std::floor(pop->get<double>()) == pop->get<double>()))
        throw ValidationError(where + ": population must be an integer");
    zone.population = pop->is_number_integer() ? pop->get<std::int64_t>() : static_cast<std::int64_t>(pop->get<double>());
    if (zone.population < 0) throw ValidationError(where + ": population is negative");

    const auto geom = feature.find("geometry");
    if (geom == feature.end() || !geom->is_object()) throw ValidationError(where + ": missing geometry");
    const auto type = geom->value("type", std::string());
    const auto coords = geom->find("coordinates");
    if (coords == geom->end()) throw ValidationError(where + ": geometry has no coordinates");
    if (type == "Polygon") {
        append_polygon(*coords, zone.geometry, where);
    } else if (type == "MultiPolygon") {
        if (!coords->is_array() || coords->empty()) throw ValidationError(where + ": empty MultiPolygon");
        for (const auto& part : *coords) append_polygon(part, zone.geometry, where);
    } else {
        throw ValidationError(where + ": geometry type '" + type + "' is not Polygon or MultiPolygon");
    }
    return zone;
}

}  // namespace

std::vector<Zone> parse_zones(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, e.what());
    }
    if (!doc.is_object() || doc.value("type", std::string()) != "FeatureCollection")
        throw ValidationError(source + ": not a GeoJSON FeatureCollection");
    const auto features = doc.find("features");
    if (features == doc.end() || !features->is_array()) throw ValidationError(source + ": missing features array");

    std::vector<Zone> zones;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < features->size(); ++i) {
        try {
            zones.push_back(parse_feature(i, (*features)[i]));
        } catch (const ValidationError& e) {
            throw ValidationError(source + ": " + e.what());
        }
        if (!seen.insert(zones.back().zone_id).second)
            throw ValidationError(source + ": duplicate zone_id " + zones.back().zone_id);
    }
    return zones;
}

std::vector<Zone> read_zones(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_zones(ss.str(), path.string());
}

std::string format_zones(const std::vector<Zone>& zones) {
    json features = json::array();
    for (const auto& z : zones) {
        json polys = json::array();
        for (const auto& ring : z.geometry.rings) {
            json r = json::array();
            for (const auto& p : ring) r.push_back({p.x, p.y});
            if (!ring.empty() && (ring.front().x != ring.back().x || ring.front().y != ring.back().y))
                r.push_back({ring.front().x, ring.front().y});
            // Each ring written as its own polygon part; even-odd membership is unchanged.
            polys.push_back(json::array({r}));
        }
        features.push_back({{"type", "Feature"},
                            {"properties",
                             {{"zone_id", z.zone_id}, {"damage_ratio", z.damage_ratio}, {"population", z.population}}},
                            {"geometry", {{"type", "MultiPolygon"}, {"coordinates", polys}}}});
    }
    json doc = {{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(1) + "\n";
}

void write_zones(const std::vector<Zone>& zones, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << format_zones(zones);
}

}  // namespace ntl
