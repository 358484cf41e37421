#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ntl/preprocess.hpp"

namespace ntl {

std::string_view dataset_name(Dataset d) noexcept;  // "VSC-NTL" / "VNP46A2"
std::optional<Dataset> parse_dataset(std::string_view s) noexcept;

// One dataset plus one combination of pre-processing methods.
struct PipelineConfig {
    Dataset dataset = Dataset::vsc_ntl;
    ThresholdMode threshold_mode = ThresholdMode::none;
    bool built_mask = false;
    bool quality_filter = false;
    double built_fraction_threshold = 0.5;
    double threshold_lo = 0.0;
    double threshold_hi = 50.0;
    int imputation_window_months = 12;

    // Throws ConfigError. VNP46A2 never takes value thresholding.
    void validate() const;

    // "raw", or methods joined by '+' in the order clip|remove, built, quality.
    std::string label() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// Parses a canonical label ("clip+built", "raw", ...) onto a copy of `base`.
PipelineConfig config_from_label(std::string_view label, const PipelineConfig& base);

// Every valid method combination for the dataset, in reporting order:
// quality filter outermost, then built mask, then thresholding.
// 12 configs for VSC-NTL, 4 for VNP46A2.
std::vector<PipelineConfig> enumerate_configs(Dataset dataset, const PipelineConfig& tunables = {});

struct PipelineInputs {
    const RadianceStack& radiance;
    const QualityStack* quality = nullptr;
    const RasterGrid* built_fraction = nullptr;
};

// Stage order is fixed: quality filter + imputation, then thresholding, then
// built masking. Disabled stages are skipped.
RadianceStack run_pipeline(const PipelineInputs& inputs, const PipelineConfig& config);

}  // namespace ntl
