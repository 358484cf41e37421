#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ntl/analysis.hpp"
#include "ntl/month.hpp"
#include "ntl/pipeline.hpp"
#include "ntl/synthetic.hpp"

namespace ntl {

namespace fs = std::filesystem;

// One NTL product on disk. File naming inside raster_dir:
//   <YYYY-MM>.asc        monthly radiance
//   <YYYY-MM-DD>.asc     daily radiance (median-composited when no monthly file)
//   <YYYY-MM>.qf.asc     monthly quality band (in quality_dir)
//   built_fraction.asc   built fraction on the dataset grid (default location)
struct DatasetDescriptor {
    std::string name;
    Dataset kind = Dataset::vsc_ntl;
    fs::path raster_dir;
    fs::path quality_dir;
    std::optional<fs::path> built_fraction;
    std::optional<fs::path> landcover;  // label raster resampled to a built fraction
    std::int64_t built_class = 6;
    std::optional<GridSpec> expected_grid;

    fs::path built_fraction_path() const { return built_fraction ? *built_fraction : raster_dir / "built_fraction.asc"; }
};

struct HurricaneSpec {
    std::string name;
    MonthIndex event;
    std::optional<fs::path> zones;  // per-event damage ratios; falls back to RunConfig::zones
};

struct PipelineSelection {
    std::string dataset;  // DatasetDescriptor::name
    PipelineConfig config;
};

struct RunConfig {
    fs::path source;
    std::vector<DatasetDescriptor> datasets;
    fs::path zones;
    std::vector<HurricaneSpec> hurricanes;
    std::vector<PipelineSelection> pipelines;
    fs::path output_dir = "out";
    double min_damage = 0.01;
    int jobs = 1;
    int case_study_k = 3;
    std::optional<PopulationBand> population_band;
    int months_before = 12;
    int months_after = 12;
    int baseline_months = 6;

    const DatasetDescriptor& dataset(const std::string& name) const;
    const fs::path& zones_for(const HurricaneSpec& h) const { return h.zones ? *h.zones : zones; }
    EventWindow window_for(const HurricaneSpec& h) const { return {h.event, months_before, months_after}; }
};

// Relative paths resolve against the config file's directory. Throws
// ConfigError (structure/values) or ParseError (not JSON).
RunConfig load_run_config(const fs::path& path);
RunConfig parse_run_config(const std::string& text, const fs::path& base_dir, const std::string& source = "<memory>");
std::string format_run_config(const RunConfig& cfg);

struct SimulationSpec {
    SceneSpec scene;
    std::vector<PipelineConfig> configs;
    double min_damage = 0.01;
};

SimulationSpec load_simulation_spec(const fs::path& path);
SimulationSpec parse_simulation_spec(const std::string& text, const fs::path& base_dir,
                                     const std::string& source = "<memory>");

}  // namespace ntl
