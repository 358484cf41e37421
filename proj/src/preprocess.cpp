#include "ntl/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ntl/errors.hpp"
#include "ntl/quality.hpp"

namespace ntl {

RasterGrid threshold(const RasterGrid& raster, ThresholdMode mode, double lo, double hi) {
    if (!(lo < hi)) throw ContractViolation("threshold: lower bound must be below upper bound");
    RasterGrid out = raster;
    if (mode == ThresholdMode::none) return out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.is_missing(i)) continue;
        const double v = out.values[i];
        if (mode == ThresholdMode::clip) {
            out.values[i] = std::min(std::max(v, lo), hi);
        } else if (!(v >= lo && v <= hi)) {
            out.set_missing(i);
        }
    }
    return out;
}

RasterGrid apply_built_mask(const RasterGrid& raster, const RasterGrid& built_fraction, double min_fraction) {
    require_same_grid(raster, built_fraction, "apply_built_mask");
    if (!(min_fraction >= 0.0 && min_fraction <= 1.0))
        throw ContractViolation("apply_built_mask: threshold must lie in [0,1]");
    RasterGrid out = raster;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (built_fraction.is_missing(i) || !(built_fraction.values[i] >= min_fraction)) out.set_missing(i);
    return out;
}

std::optional<double> impute_pixel(const PixelHistory& history, int t, int window) {
    if (window <= 0) throw ContractViolation("impute_pixel: window must be positive");
    double weighted = 0.0, weights = 0.0;
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const auto& obs : history.observations) {
        if (!obs.high_quality) continue;
        if (obs.month == t) throw ContractViolation("impute_pixel: target month already has a high-quality value");
        if (obs.month < t - window || obs.month >= t) continue;
        const double w = 1.0 / static_cast<double>(t - obs.month);
        weighted += w * obs.value;
        weights += w;
        lo = any ? std::min(lo, obs.value) : obs.value;
        hi = any ? std::max(hi, obs.value) : obs.value;
        any = true;
    }
    if (!any) return std::nullopt;
    // The weighted mean lies in [lo, hi] exactly; clamp away rounding.
    return std::clamp(weighted / weights, lo, hi);
}

std::vector<std::uint8_t> high_quality_mask(const IntRaster& quality, Dataset dataset) {
    std::vector<std::uint8_t> hq(quality.size(), 0);
    for (std::size_t i = 0; i < quality.size(); ++i) {
        if (quality.is_missing(i)) continue;
        const auto q = quality.values[i];
        if (dataset == Dataset::vsc_ntl) {
            hq[i] = is_high_quality_vscntl(q);
        } else {
            if (q < 0) throw DecodeError(static_cast<std::uint32_t>(q), "negative quality value");
            hq[i] = is_high_quality_vnp46a2(decode_vnp46a2_quality(static_cast<std::uint32_t>(q)));
        }
    }
    return hq;
}

RadianceStack quality_filter_and_impute(const RadianceStack& radiance, const QualityStack& quality, Dataset dataset,
                                        int window_months) {
    if (window_months <= 0) throw ContractViolation("quality_filter_and_impute: window must be positive");
    if (radiance.months != quality.months)
        throw ContractViolation("quality_filter_and_impute: radiance and quality stacks cover different months");
    for (std::size_t k = 0; k < radiance.size(); ++k) {
        require_same_grid(radiance.layers[k], quality.layers[k], "quality_filter_and_impute");
        if (!(radiance.layers[k].spec == radiance.layers.front().spec))
            throw ContractViolation("quality_filter_and_impute: radiance grid changes at " + radiance.months[k].str());
    }

    const std::size_t n_layers = radiance.size();
    std::vector<std::vector<std::uint8_t>> usable(n_layers);
    for (std::size_t k = 0; k < n_layers; ++k) {
        usable[k] = high_quality_mask(quality.layers[k], dataset);
        const auto& layer = radiance.layers[k];
        for (std::size_t i = 0; i < layer.size(); ++i)
            if (layer.is_missing(i)) usable[k][i] = 0;
    }

    std::vector<int> ordinals(n_layers);
    for (std::size_t k = 0; k < n_layers; ++k) ordinals[k] = radiance.months[k].ordinal();

    RadianceStack out = radiance;
    PixelHistory history;
    for (std::size_t k = 0; k < n_layers; ++k) {
        auto& layer = out.layers[k];
        const int t = ordinals[k];
        for (std::size_t i = 0; i < layer.size(); ++i) {
            if (usable[k][i]) continue;
            history.observations.clear();
            for (std::size_t j = 0; j < k; ++j) {
                if (ordinals[j] < t - window_months) continue;
                if (usable[j][i]) history.observations.push_back({ordinals[j], radiance.layers[j].values[i], true});
            }
            if (auto v = impute_pixel(history, t, window_months))
                layer.set(i, *v);
            else
                layer.set_missing(i);
        }
    }
    return out;
}

}  // namespace ntl
