#include "ntl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ntl/errors.hpp"
#include "ntl/format.hpp"

namespace ntl {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw StatsError("pearson: sequences differ in length");
    const std::size_t n = xs.size();
    if (n < 2) throw StatsError("pearson: need at least 2 samples, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw StatsError("pearson: zero variance");
    const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
    return std::clamp(r, -1.0, 1.0);
}

FilterResult filter_zones(std::span<const DropSample> samples, double min_damage) {
    FilterResult result;
    for (const auto& s : samples) {
        if (!(s.damage_ratio >= min_damage))
            result.excluded.push_back({s, ExclusionReason::below_damage_threshold});
        else if (!s.drop)
            result.excluded.push_back({s, ExclusionReason::missing_drop});
        else
            result.kept.push_back(s);
    }
    return result;
}

CaseStudySelection select_case_study_zones(std::span<const Zone> zones, int k,
                                           const std::optional<PopulationBand>& band) {
    if (k < 1) throw ConfigError("case study size k must be >= 1");
    std::vector<Zone> pool;
    for (const auto& z : zones)
        if (!band || (z.population >= band->min && z.population <= band->max)) pool.push_back(z);
    if (pool.size() < 2 * static_cast<std::size_t>(k))
        throw ConfigError("case study needs " + std::to_string(2 * k) + " zones, have " + std::to_string(pool.size()));

    std::sort(pool.begin(), pool.end(), [](const Zone& a, const Zone& b) {
        if (a.damage_ratio != b.damage_ratio) return a.damage_ratio > b.damage_ratio;
        return a.zone_id < b.zone_id;
    });
    CaseStudySelection sel;
    sel.top.assign(pool.begin(), pool.begin() + k);

    std::vector<Zone> rest(pool.begin() + k, pool.end());
    std::sort(rest.begin(), rest.end(), [](const Zone& a, const Zone& b) {
        if (a.damage_ratio != b.damage_ratio) return a.damage_ratio < b.damage_ratio;
        return a.zone_id < b.zone_id;
    });
    sel.bottom.assign(rest.begin(), rest.begin() + k);
    return sel;
}

ReportRow correlate_method(const PipelineConfig& config, std::span<const DropSample> filtered) {
    std::vector<double> drops, damage;
    for (const auto& s : filtered) {
        if (!s.drop) continue;
        drops.push_back(*s.drop);
        damage.push_back(s.damage_ratio);
    }
    ReportRow row{config.dataset, config.label(), 0.0, drops.size()};
    try {
        row.pcc = pearson(drops, damage);
    } catch (const StatsError& e) {
        throw StatsError(std::string(dataset_name(config.dataset)) + " " + config.label() + ": " + e.what());
    }
    return row;
}

CorrelationReport build_report(std::span<const PipelineConfig> expected, std::span<const ConfigResult> results,
                               double min_damage, std::vector<std::string> hurricanes) {
    CorrelationReport report;
    report.hurricanes = std::move(hurricanes);
    report.min_damage = min_damage;

    std::vector<std::string> absent, failed;
    for (const auto& cfg : expected) {
        const auto it = std::find_if(results.begin(), results.end(), [&](const ConfigResult& r) {
            return r.config.dataset == cfg.dataset && r.config.label() == cfg.label();
        });
        const std::string name = std::string(dataset_name(cfg.dataset)) + "/" + cfg.label();
        if (it == results.end()) {
            absent.push_back(name);
            continue;
        }
        const auto filtered = filter_zones(it->samples, min_damage);
        try {
            report.rows.push_back(correlate_method(cfg, filtered.kept));
        } catch (const StatsError& e) {
            failed.push_back(e.what());
        }
    }

    if (!absent.empty() || !failed.empty()) {
        std::string msg = "report incomplete";
        if (!absent.empty()) {
            msg += "; missing results for:";
            for (const auto& a : absent) msg += " " + a;
        }
        for (const auto& f : failed) msg += "; " + f;
        throw ReportError(msg);
    }
    return report;
}

std::string format_report_csv(const CorrelationReport& report) {
    std::string out = "dataset,methods,pcc,n_samples\n";
    for (const auto& r : report.rows)
        out += std::string(dataset_name(r.dataset)) + "," + r.methods + "," + format_real(r.pcc) + "," +
               std::to_string(r.n_samples) + "\n";
    return out;
}

void write_report_csv(const CorrelationReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << format_report_csv(report);
}

}  // namespace ntl
