#include "ntl/pipeline.hpp"

#include "ntl/errors.hpp"

namespace ntl {

std::string_view dataset_name(Dataset d) noexcept { return d == Dataset::vsc_ntl ? "VSC-NTL" : "VNP46A2"; }

std::optional<Dataset> parse_dataset(std::string_view s) noexcept {
    if (s == "VSC-NTL" || s == "VSC_NTL" || s == "vsc-ntl" || s == "vsc_ntl") return Dataset::vsc_ntl;
    if (s == "VNP46A2" || s == "vnp46a2") return Dataset::vnp46a2;
    return std::nullopt;
}

void PipelineConfig::validate() const {
    if (dataset == Dataset::vnp46a2 && threshold_mode != ThresholdMode::none)
        throw ConfigError("VNP46A2 pipelines do not use value thresholding (" + label() + ")");
    if (!(threshold_lo < threshold_hi)) throw ConfigError("threshold_lo must be below threshold_hi");
    if (!(built_fraction_threshold >= 0.0 && built_fraction_threshold <= 1.0))
        throw ConfigError("built_fraction_threshold must lie in [0,1]");
    if (imputation_window_months < 1) throw ConfigError("imputation_window_months must be >= 1");
}

std::string PipelineConfig::label() const {
    std::string out;
    auto add = [&](const char* part) {
        if (!out.empty()) out += '+';
        out += part;
    };
    if (threshold_mode == ThresholdMode::clip) add("clip");
    if (threshold_mode == ThresholdMode::remove) add("remove");
    if (built_mask) add("built");
    if (quality_filter) add("quality");
    return out.empty() ? "raw" : out;
}

PipelineConfig config_from_label(std::string_view label, const PipelineConfig& base) {
    PipelineConfig cfg = base;
    cfg.threshold_mode = ThresholdMode::none;
    cfg.built_mask = false;
    cfg.quality_filter = false;
    if (label == "raw") return cfg;

    std::size_t start = 0;
    int stage = 0;  // enforces canonical ordering
    while (start <= label.size()) {
        auto end = label.find('+', start);
        if (end == std::string_view::npos) end = label.size();
        const auto part = label.substr(start, end - start);
        if ((part == "clip" || part == "remove") && stage < 1) {
            cfg.threshold_mode = part == "clip" ? ThresholdMode::clip : ThresholdMode::remove;
            stage = 1;
        } else if (part == "built" && stage < 2) {
            cfg.built_mask = true;
            stage = 2;
        } else if (part == "quality" && stage < 3) {
            cfg.quality_filter = true;
            stage = 3;
        } else {
            throw ConfigError("bad method label '" + std::string(label) + "'");
        }
        start = end + 1;
    }
    return cfg;
}

std::vector<PipelineConfig> enumerate_configs(Dataset dataset, const PipelineConfig& tunables) {
    std::vector<PipelineConfig> out;
    const std::vector<ThresholdMode> modes = dataset == Dataset::vsc_ntl
                                                  ? std::vector{ThresholdMode::none, ThresholdMode::clip, ThresholdMode::remove}
                                                  : std::vector{ThresholdMode::none};
    for (bool quality : {false, true}) {
        for (bool built : {false, true}) {
            for (auto mode : modes) {
                PipelineConfig cfg = tunables;
                cfg.dataset = dataset;
                cfg.threshold_mode = mode;
                cfg.built_mask = built;
                cfg.quality_filter = quality;
                out.push_back(cfg);
            }
        }
    }
    return out;
}

RadianceStack run_pipeline(const PipelineInputs& inputs, const PipelineConfig& config) {
    config.validate();
    if (config.quality_filter && !inputs.quality)
        throw ConfigError("quality stage enabled for " + config.label() + " but no quality stack was supplied");
    if (config.built_mask && !inputs.built_fraction)
        throw ConfigError("built stage enabled for " + config.label() + " but no built fraction grid was supplied");

    RadianceStack stack = config.quality_filter ? quality_filter_and_impute(inputs.radiance, *inputs.quality,
                                                                            config.dataset,
                                                                            config.imputation_window_months)
                                                : inputs.radiance;
    if (config.threshold_mode != ThresholdMode::none)
        for (auto& layer : stack.layers)
            layer = threshold(layer, config.threshold_mode, config.threshold_lo, config.threshold_hi);
    if (config.built_mask)
        for (auto& layer : stack.layers)
            layer = apply_built_mask(layer, *inputs.built_fraction, config.built_fraction_threshold);
    return stack;
}

}  // namespace ntl
