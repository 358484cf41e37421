#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ntl/analysis.hpp"
#include "ntl/pipeline.hpp"
#include "ntl/timeseries.hpp"
#include "ntl/zones.hpp"

namespace ntl {

// Scene random stream. std::mt19937_64 is fully specified by the standard;
// uniforms take the top 53 bits, normals use Box-Muller on two fresh
// uniforms (no cached second variate). Nothing depends on library
// distributions, so a seed reproduces a scene on any conforming compiler.
class SceneRng {
public:
    explicit SceneRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

enum class CorruptionMode {
    attenuate,          // v *= max(0, 1 - corruption_scale * U(0,1))
    replace_with_base,  // v = the pixel's undamaged radiance
};

struct NoiseSpec {
    double gaussian_sigma = 0.0;  // multiplicative, unflagged
    double cloud_rate = 0.0;      // flagged low-quality + corrupted
    double corruption_scale = 0.0;
    CorruptionMode corruption_mode = CorruptionMode::attenuate;
    std::vector<MonthIndex> cloud_months;  // empty: clouds in every month
    double bloom_rate = 0.0;               // unflagged outliers
    double bloom_min = 60.0;
    double bloom_max = 500.0;
    std::optional<RasterGrid> built_fraction_map;  // default: fully built
};

struct SceneSpec {
    std::uint64_t seed = 0;
    Dataset dataset = Dataset::vnp46a2;
    GridSpec grid;
    std::vector<Zone> zones;
    EventWindow window;
    std::vector<double> base_radiance{20.0};  // per zone; one value broadcasts
    double background_radiance = 1.0;
    double texture_sigma = 0.0;  // static log-normal per-pixel brightness texture
    double drop_gain = 1.0;
    NoiseSpec noise;

    double base_for_zone(std::size_t z) const { return base_radiance.size() == 1 ? base_radiance[0] : base_radiance[z]; }

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Square zones tiled on a regular lattice with `margin` background cells
// between and around them. Zone ids are "Z000", "Z001", ... row-major.
struct TiledLayout {
    int zone_rows = 5;
    int zone_cols = 5;
    int zone_cells = 8;
    int margin_cells = 1;
    double cell_size = 500.0;
    double x_origin = 0.0;
    double y_origin = 0.0;
};

GridSpec tiled_grid(const TiledLayout& layout);
std::vector<Zone> tiled_zones(const TiledLayout& layout, const std::vector<double>& damage_ratios);

// n values evenly spaced over [lo, hi].
std::vector<double> spread(std::size_t n, double lo, double hi);

struct TruthRow {
    std::string zone_id;
    double damage_ratio = 0.0;
    double base_radiance = 0.0;
    double true_drop = 0.0;  // percent
};

struct Scene {
    SceneSpec spec;
    RadianceStack radiance;        // observed
    QualityStack quality;          // flags exactly the corrupted pixel-months
    RadianceStack truth_radiance;  // before any noise channel
    RasterGrid built_fraction;
    std::vector<TruthRow> truth;
};

Scene generate_scene(const SceneSpec& spec);

struct OracleResult {
    PipelineConfig config;
    double recovered_pcc = 0.0;
    double truth_pcc = 0.0;
    std::vector<DropSample> samples;  // recovered drops, unfiltered
};

OracleResult oracle_check(const Scene& scene, const PipelineConfig& config, double min_damage = 0.01);

// Quality codes written for synthetic pixels.
inline constexpr std::int64_t kSyntheticGoodVnp = 50;   // land, high quality, confident clear
inline constexpr std::int64_t kSyntheticBadVnp = 242;   // same but confident cloudy
inline constexpr std::int64_t kSyntheticGoodVsc = 20;   // cloud-free observation count
inline constexpr std::int64_t kSyntheticBadVsc = 0;

}  // namespace ntl
