#include "ntl/timeseries.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ntl/errors.hpp"
#include "ntl/format.hpp"

namespace ntl {

RasterGrid monthly_median_composite(std::span<const RasterGrid> daily) {
    if (daily.empty()) throw ContractViolation("monthly_median_composite: no daily rasters");
    const GridSpec& spec = daily.front().spec;
    for (const auto& d : daily)
        if (!(d.spec == spec)) throw ContractViolation("monthly_median_composite: daily grids differ");

    RasterGrid out(spec);
    std::vector<double> samples;
    samples.reserve(daily.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        samples.clear();
        for (const auto& d : daily)
            if (!d.is_missing(i)) samples.push_back(d.values[i]);
        if (samples.empty()) {
            out.set_missing(i);
            continue;
        }
        std::sort(samples.begin(), samples.end());
        const std::size_t n = samples.size();
        const double median = n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
        out.set(i, median);
    }
    return out;
}

ZoneSeries build_zone_series(const RadianceStack& stack, const ZoneMask& mask, const EventWindow& window,
                             std::string zone_id) {
    ZoneSeries series{std::move(zone_id), window.first(), {}};
    series.values.reserve(static_cast<std::size_t>(window.length()));
    for (int k = 0; k < window.length(); ++k) {
        const auto* layer = stack.find(window.first() + k);
        series.values.push_back(layer ? zonal_mean(*layer, mask) : std::nullopt);
    }
    return series;
}

std::optional<double> rolling_baseline(const ZoneSeries& series, const MonthIndex& t, int months) {
    if (months < 1) throw ContractViolation("rolling_baseline: window must be >= 1");
    double sum = 0.0;
    int n = 0;
    for (int k = months; k >= 1; --k) {
        if (auto v = series.at(t - k)) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

std::optional<double> percent_change(const ZoneSeries& series, const MonthIndex& t, int months) {
    const auto x = series.at(t);
    if (!x) return std::nullopt;
    const auto base = rolling_baseline(series, t, months);
    if (!base || *base <= kBaselineEpsilon) return std::nullopt;
    return 100.0 * (*x - *base) / *base;
}

std::optional<double> event_drop(const ZoneSeries& series, const EventWindow& window, int baseline_months) {
    const auto pc = percent_change(series, window.event_month, baseline_months);
    if (!pc) return std::nullopt;
    return 0.0 - *pc;
}

std::string format_series_csv(const ZoneSeries& series, int baseline_months) {
    std::string out = "zone_id,year,month,mean_radiance,percent_change\n";
    for (std::size_t k = 0; k < series.values.size(); ++k) {
        const MonthIndex m = series.start + static_cast<int>(k);
        out += series.zone_id + "," + std::to_string(m.year) + "," + std::to_string(m.month) + "," +
               format_real(series.values[k]) + "," + format_real(percent_change(series, m, baseline_months)) + "\n";
    }
    return out;
}

void write_series_csv(const ZoneSeries& series, const std::filesystem::path& path, int baseline_months) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << format_series_csv(series, baseline_months);
}

ZoneSeries parse_series_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    ZoneSeries series;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1) {
            if (line.rfind("zone_id,year,month,mean_radiance", 0) != 0)
                throw ParseError(source, lineno, "unexpected series header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() != 5) throw ParseError(source, lineno, "expected 5 fields");
        const auto year = parse_real(fields[1]);
        const auto month = parse_real(fields[2]);
        if (!year || !month || *month < 1 || *month > 12) throw ParseError(source, lineno, "bad year/month");
        const MonthIndex m{static_cast<int>(*year), static_cast<int>(*month)};
        std::optional<double> value;
        if (!fields[3].empty()) {
            value = parse_real(fields[3]);
            if (!value) throw ParseError(source, lineno, "non-numeric mean_radiance");
        }
        if (first_row) {
            series.zone_id = fields[0];
            series.start = m;
            first_row = false;
        } else if (!(m == series.end())) {
            throw ParseError(source, lineno, "months are not contiguous");
        }
        series.values.push_back(value);
    }
    if (first_row) throw ParseError(source, lineno, "series has no rows");
    return series;
}

ZoneSeries read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_series_csv(ss.str(), path.string());
}

}  // namespace ntl
