#pragma once

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <vector>

#include "ntl/run_config.hpp"

namespace ntl {

struct CommandOptions {
    std::filesystem::path config;
    std::optional<std::filesystem::path> out;  // overrides output_dir
    bool force = false;
    std::optional<int> jobs;
    std::ostream* log = &std::cout;
    std::ostream* err = &std::cerr;
};

// Each returns the process exit code: 0 iff nothing failed.
int cmd_validate(const CommandOptions& opts);
int cmd_extract(const CommandOptions& opts);
int cmd_report(const CommandOptions& opts);
int cmd_simulate(const CommandOptions& opts);

// Files available for one dataset, keyed by month.
struct DatasetCatalog {
    std::map<MonthIndex, std::filesystem::path> monthly;
    std::map<MonthIndex, std::vector<std::filesystem::path>> daily;
    std::map<MonthIndex, std::filesystem::path> quality;

    std::vector<MonthIndex> radiance_months() const;
};

DatasetCatalog scan_dataset(const DatasetDescriptor& desc);

// Radiance for every available month in [first, last]; daily-only months are
// median-composited.
RadianceStack load_radiance(const DatasetCatalog& catalog, MonthIndex first, MonthIndex last);

// Quality layers aligned to `radiance`; months without a quality file get an
// all-missing layer, which marks every pixel low-quality.
QualityStack load_quality(const DatasetCatalog& catalog, const RadianceStack& radiance);

RasterGrid load_built_fraction(const DatasetDescriptor& desc, const GridSpec& grid);

std::filesystem::path series_path(const std::filesystem::path& out, const std::string& dataset,
                                  const std::string& methods, const std::string& hurricane, const std::string& zone);

}  // namespace ntl
