#include "ntl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ntl/errors.hpp"

namespace ntl {

double SceneRng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SceneSpec::validate() const {
    auto fail = [](const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); };
    if (!grid.valid()) fail("grid", "ncols/nrows must be >= 1 and cell_size > 0");
    if (zones.empty()) fail("zones", "scene has no zones");
    if (base_radiance.size() != 1 && base_radiance.size() != zones.size())
        fail("base_radiance", "must hold one value or one per zone");
    for (double b : base_radiance)
        if (!(b > 0.0)) fail("base_radiance", "must be > 0");
    if (!(background_radiance >= 0.0)) fail("background_radiance", "must be >= 0");
    if (!(texture_sigma >= 0.0)) fail("texture_sigma", "must be >= 0");
    if (window.months_before < 1 || window.months_after < 0) fail("window", "needs at least one month before the event");
    double max_damage = 0.0;
    for (const auto& z : zones) {
        if (!(z.damage_ratio >= 0.0 && z.damage_ratio <= 1.0)) fail("damage_ratio", "zone " + z.zone_id + " outside [0,1]");
        max_damage = std::max(max_damage, z.damage_ratio);
    }
    if (!(drop_gain >= 0.0) || drop_gain * max_damage > 1.0)
        fail("drop_gain", "drop_gain * max(damage_ratio) must lie in [0,1]");

    auto prob = [&](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) fail(std::string("noise.") + name, "probability must lie in [0,1]");
    };
    prob(noise.cloud_rate, "cloud_rate");
    prob(noise.bloom_rate, "bloom_rate");
    if (!(noise.gaussian_sigma >= 0.0)) fail("noise.gaussian_sigma", "must be >= 0");
    if (!(noise.corruption_scale >= 0.0)) fail("noise.corruption_scale", "must be >= 0");
    if (!(noise.bloom_min <= noise.bloom_max)) fail("noise.bloom_range", "min must not exceed max");
    if (noise.built_fraction_map && !(noise.built_fraction_map->spec == grid))
        fail("noise.built_fraction", "grid differs from the scene grid");
}

GridSpec tiled_grid(const TiledLayout& l) {
    GridSpec g;
    g.ncols = l.zone_cols * (l.zone_cells + l.margin_cells) + l.margin_cells;
    g.nrows = l.zone_rows * (l.zone_cells + l.margin_cells) + l.margin_cells;
    g.x_origin = l.x_origin;
    g.y_origin = l.y_origin;
    g.cell_size = l.cell_size;
    return g;
}

std::vector<Zone> tiled_zones(const TiledLayout& l, const std::vector<double>& damage_ratios) {
    const std::size_t n = static_cast<std::size_t>(l.zone_rows) * static_cast<std::size_t>(l.zone_cols);
    if (damage_ratios.size() != n)
        throw ConfigError("damage_ratios: need " + std::to_string(n) + " values for the tiled layout");
    const GridSpec g = tiled_grid(l);
    const double cs = l.cell_size;
    const double top = g.y_origin + g.nrows * cs;

    std::vector<Zone> zones;
    for (int i = 0; i < l.zone_rows; ++i) {
        for (int j = 0; j < l.zone_cols; ++j) {
            const int row0 = l.margin_cells + i * (l.zone_cells + l.margin_cells);
            const int col0 = l.margin_cells + j * (l.zone_cells + l.margin_cells);
            const double x0 = g.x_origin + col0 * cs, x1 = x0 + l.zone_cells * cs;
            const double y1 = top - row0 * cs, y0 = y1 - l.zone_cells * cs;
            Zone z;
            std::ostringstream id;
            id << 'Z' << std::setw(3) << std::setfill('0') << zones.size();
            z.zone_id = id.str();
            z.geometry.rings.push_back({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}});
            z.damage_ratio = damage_ratios[zones.size()];
            z.population = 1000 * static_cast<std::int64_t>(zones.size() + 1);
            zones.push_back(std::move(z));
        }
    }
    return zones;
}

std::vector<double> spread(std::size_t n, double lo, double hi) {
    std::vector<double> out(n, lo);
    for (std::size_t i = 1; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    const GridSpec& g = spec.grid;
    const std::size_t cells = g.size();
    SceneRng rng(spec.seed);

    // Zone membership; the first zone listed wins on overlap.
    std::vector<int> owner(cells, -1);
    for (std::size_t z = 0; z < spec.zones.size(); ++z) {
        const ZoneMask m = rasterize_zone(spec.zones[z], g);
        for (std::size_t i = 0; i < cells; ++i)
            if (m.inside[i] && owner[i] < 0) owner[i] = static_cast<int>(z);
    }

    // Static per-pixel undamaged radiance. Texture draws come first in the stream.
    std::vector<double> base(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const double level = owner[i] >= 0 ? spec.base_for_zone(static_cast<std::size_t>(owner[i])) : spec.background_radiance;
        const double texture = spec.texture_sigma > 0.0 ? std::exp(spec.texture_sigma * rng.normal()) : 1.0;
        base[i] = level * texture;
    }

    Scene scene;
    scene.spec = spec;
    scene.built_fraction = spec.noise.built_fraction_map ? *spec.noise.built_fraction_map : RasterGrid(g, 1.0);

    const auto& noise = spec.noise;
    const bool vnp = spec.dataset == Dataset::vnp46a2;
    for (int k = 0; k < spec.window.length(); ++k) {
        const MonthIndex month = spec.window.first() + k;
        const bool is_event = month == spec.window.event_month;
        const bool clouds_here = noise.cloud_months.empty() ||
                                 std::find(noise.cloud_months.begin(), noise.cloud_months.end(), month) !=
                                     noise.cloud_months.end();

        RasterGrid truth(g), observed(g);
        IntRaster quality(g, vnp ? kSyntheticGoodVnp : kSyntheticGoodVsc);
        for (std::size_t i = 0; i < cells; ++i) {
            double v = base[i];
            if (is_event && owner[i] >= 0)
                v *= 1.0 - spec.drop_gain * spec.zones[static_cast<std::size_t>(owner[i])].damage_ratio;
            truth.values[i] = v;

            if (noise.gaussian_sigma > 0.0) v *= 1.0 + noise.gaussian_sigma * rng.normal();
            if (noise.bloom_rate > 0.0 && rng.bernoulli(noise.bloom_rate)) v = rng.uniform(noise.bloom_min, noise.bloom_max);
            if (clouds_here && noise.cloud_rate > 0.0 && rng.bernoulli(noise.cloud_rate)) {
                if (noise.corruption_mode == CorruptionMode::attenuate)
                    v *= std::max(0.0, 1.0 - noise.corruption_scale * rng.uniform());
                else
                    v = base[i];
                quality.values[i] = vnp ? kSyntheticBadVnp : kSyntheticBadVsc;
            }
            observed.values[i] = v;
        }
        scene.truth_radiance.push_back(month, std::move(truth));
        scene.radiance.push_back(month, std::move(observed));
        scene.quality.push_back(month, std::move(quality));
    }

    for (std::size_t z = 0; z < spec.zones.size(); ++z) {
        const auto& zone = spec.zones[z];
        scene.truth.push_back({zone.zone_id, zone.damage_ratio, spec.base_for_zone(z),
                               100.0 * spec.drop_gain * zone.damage_ratio});
    }
    return scene;
}

OracleResult oracle_check(const Scene& scene, const PipelineConfig& config, double min_damage) {
    if (scene.spec.zones.size() < 3) throw ConfigError("oracle_check: scene needs at least 3 zones");
    PipelineConfig cfg = config;
    cfg.dataset = scene.spec.dataset;
    const RadianceStack processed =
        run_pipeline({scene.radiance, &scene.quality, &scene.built_fraction}, cfg);

    OracleResult result;
    result.config = cfg;
    std::vector<double> truth_drops, truth_damage;
    for (std::size_t z = 0; z < scene.spec.zones.size(); ++z) {
        const auto& zone = scene.spec.zones[z];
        const ZoneMask mask = rasterize_zone(zone, scene.spec.grid);
        const ZoneSeries series = build_zone_series(processed, mask, scene.spec.window, zone.zone_id);
        result.samples.push_back({zone.zone_id, "synthetic", zone.damage_ratio, zone.population,
                                  event_drop(series, scene.spec.window)});
    }
    const FilterResult kept = filter_zones(result.samples, min_damage);
    result.recovered_pcc = correlate_method(cfg, kept.kept).pcc;
    for (const auto& s : kept.kept) {
        const auto t = std::find_if(scene.truth.begin(), scene.truth.end(),
                                    [&](const TruthRow& row) { return row.zone_id == s.zone_id; });
        truth_drops.push_back(t->true_drop);
        truth_damage.push_back(s.damage_ratio);
    }
    result.truth_pcc = pearson(truth_drops, truth_damage);
    return result;
}

}  // namespace ntl
