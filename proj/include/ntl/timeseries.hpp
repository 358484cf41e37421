#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntl/geometry.hpp"
#include "ntl/month.hpp"
#include "ntl/preprocess.hpp"

namespace ntl {

// Per-pixel median of the non-missing daily values; even counts average the
// two middle values.
RasterGrid monthly_median_composite(std::span<const RasterGrid> daily);

struct EventWindow {
    MonthIndex event_month;
    int months_before = 12;
    int months_after = 12;

    MonthIndex first() const noexcept { return event_month - months_before; }
    MonthIndex last() const noexcept { return event_month + months_after; }
    int length() const noexcept { return months_before + months_after + 1; }
};

// Contiguous monthly zonal means starting at `start`. nullopt = missing.
struct ZoneSeries {
    std::string zone_id;
    MonthIndex start;
    std::vector<std::optional<double>> values;

    MonthIndex end() const noexcept { return start + static_cast<int>(values.size()); }

    std::optional<double> at(const MonthIndex& m) const noexcept {
        const int k = m - start;
        if (k < 0 || k >= static_cast<int>(values.size())) return std::nullopt;
        return values[static_cast<std::size_t>(k)];
    }

    friend bool operator==(const ZoneSeries&, const ZoneSeries&) = default;
};

ZoneSeries build_zone_series(const RadianceStack& stack, const ZoneMask& mask, const EventWindow& window,
                             std::string zone_id = {});

inline constexpr double kBaselineEpsilon = 1e-6;

// Mean of available observations in [t - months, t - 1].
std::optional<double> rolling_baseline(const ZoneSeries& series, const MonthIndex& t, int months = 6);

// 100 * (x_t - B) / B against the trailing baseline; undefined when x_t or B
// is missing or B <= kBaselineEpsilon.
std::optional<double> percent_change(const ZoneSeries& series, const MonthIndex& t, int months = 6);

// Positive when radiance fell in the event month.
std::optional<double> event_drop(const ZoneSeries& series, const EventWindow& window, int baseline_months = 6);

// CSV: zone_id,year,month,mean_radiance,percent_change (empty = missing).
std::string format_series_csv(const ZoneSeries& series, int baseline_months = 6);
void write_series_csv(const ZoneSeries& series, const std::filesystem::path& path, int baseline_months = 6);
ZoneSeries parse_series_csv(const std::string& text, const std::string& source = "<memory>");
ZoneSeries read_series_csv(const std::filesystem::path& path);

}  // namespace ntl
