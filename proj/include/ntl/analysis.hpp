#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntl/pipeline.hpp"
#include "ntl/zones.hpp"

namespace ntl {

// Product-moment correlation computed two-pass (means first, then centred
// moments). Throws StatsError for n < 2, unequal lengths or zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// One zone under one hurricane for one pipeline config.
struct DropSample {
    std::string zone_id;
    std::string hurricane;
    double damage_ratio = 0.0;
    std::int64_t population = 0;
    std::optional<double> drop;
};

enum class ExclusionReason { below_damage_threshold, missing_drop };

struct Exclusion {
    DropSample sample;
    ExclusionReason reason;
};

struct FilterResult {
    std::vector<DropSample> kept;
    std::vector<Exclusion> excluded;
};

FilterResult filter_zones(std::span<const DropSample> samples, double min_damage = 0.01);

struct PopulationBand {
    std::int64_t min = 0;
    std::int64_t max = INT64_MAX;
};

struct CaseStudySelection {
    std::vector<Zone> top;     // highest damage first
    std::vector<Zone> bottom;  // lowest damage first
};

// Top-k and bottom-k zones by damage ratio, ties resolved toward the smaller
// zone_id. The two groups are disjoint. Throws ConfigError when k < 1 or fewer
// than 2k zones remain after the optional population band.
CaseStudySelection select_case_study_zones(std::span<const Zone> zones, int k = 3,
                                           const std::optional<PopulationBand>& band = std::nullopt);

struct ReportRow {
    Dataset dataset = Dataset::vsc_ntl;
    std::string methods;
    double pcc = 0.0;
    std::size_t n_samples = 0;
};

// PCC between event drops and damage ratios over already-filtered samples.
// Statistics errors are rethrown with the config label attached.
ReportRow correlate_method(const PipelineConfig& config, std::span<const DropSample> filtered);

struct ConfigResult {
    PipelineConfig config;
    std::vector<DropSample> samples;  // unfiltered, all hurricanes pooled
};

struct CorrelationReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> hurricanes;
    double min_damage = 0.01;
};

// One row per expected config, in the expected order. Throws ReportError if
// a config has no results or its correlation cannot be computed.
CorrelationReport build_report(std::span<const PipelineConfig> expected, std::span<const ConfigResult> results,
                               double min_damage = 0.01, std::vector<std::string> hurricanes = {});

// dataset,methods,pcc,n_samples
std::string format_report_csv(const CorrelationReport& report);
void write_report_csv(const CorrelationReport& report, const std::filesystem::path& path);

}  // namespace ntl
