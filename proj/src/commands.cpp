#include "ntl/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <regex>
#include <set>
#include <thread>

#include <json.hpp>

#include "ntl/errors.hpp"
#include "ntl/format.hpp"
#include "ntl/grid_io.hpp"
#include "ntl/resample.hpp"
#include "ntl/timeseries.hpp"

namespace ntl {
namespace {

// Runs fn(0..n-1) on up to `jobs` threads. fn must not throw.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    };
    if (workers <= 1) {
        run();
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
}

fs::path output_root(const CommandOptions& opts, const RunConfig& cfg) { return opts.out ? *opts.out : cfg.output_dir; }

int job_count(const CommandOptions& opts, const RunConfig& cfg) { return opts.jobs ? *opts.jobs : cfg.jobs; }

std::optional<RunConfig> load_or_report(const CommandOptions& opts) {
    try {
        return load_run_config(opts.config);
    } catch (const std::exception& e) {
        *opts.err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

std::string safe_name(std::string s) {
    for (auto& c : s)
        if (c == '/' || c == '\\') c = '_';
    return s;
}

bool needs_quality(const RunConfig& cfg, const std::string& dataset) {
    return std::any_of(cfg.pipelines.begin(), cfg.pipelines.end(),
                       [&](const PipelineSelection& p) { return p.dataset == dataset && p.config.quality_filter; });
}

bool needs_built(const RunConfig& cfg, const std::string& dataset) {
    return std::any_of(cfg.pipelines.begin(), cfg.pipelines.end(),
                       [&](const PipelineSelection& p) { return p.dataset == dataset && p.config.built_mask; });
}

bool dataset_used(const RunConfig& cfg, const std::string& dataset) {
    return std::any_of(cfg.pipelines.begin(), cfg.pipelines.end(),
                       [&](const PipelineSelection& p) { return p.dataset == dataset; });
}

struct Findings {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    std::map<std::string, std::vector<Zone>> zones;  // per hurricane
    std::map<std::string, DatasetCatalog> catalogs;
};

// Shared by validate and extract.
Findings check_config(const RunConfig& cfg) {
    Findings f;
    std::map<fs::path, std::vector<Zone>> zone_files;
    for (const auto& h : cfg.hurricanes) {
        const fs::path& zp = cfg.zones_for(h);
        if (!zone_files.count(zp)) {
            if (!fs::exists(zp)) {
                f.errors.push_back("zones file not found: " + zp.string());
                continue;
            }
            try {
                zone_files[zp] = read_zones(zp);
            } catch (const std::exception& e) {
                f.errors.push_back(e.what());
                continue;
            }
        }
        f.zones[h.name] = zone_files[zp];
        if (zone_files[zp].empty()) f.errors.push_back(zp.string() + ": no zones");
    }

    for (const auto& d : cfg.datasets) {
        if (!fs::is_directory(d.raster_dir)) {
            f.errors.push_back(d.name + ": raster_dir not found: " + d.raster_dir.string());
            continue;
        }
        if (needs_quality(cfg, d.name) && !fs::is_directory(d.quality_dir))
            f.errors.push_back(d.name + ": quality_dir not found: " + d.quality_dir.string());
        DatasetCatalog cat = scan_dataset(d);
        const auto months = cat.radiance_months();
        if (months.empty()) {
            f.errors.push_back(d.name + ": no radiance files in " + d.raster_dir.string());
            continue;
        }

        std::optional<GridSpec> ref = d.expected_grid;
        auto check_grid = [&](const fs::path& p) {
            try {
                const GridSpec g = read_grid_spec(p);
                if (!ref)
                    ref = g;
                else if (!(g == *ref))
                    f.errors.push_back(d.name + ": grid mismatch in " + p.string());
            } catch (const std::exception& e) {
                f.errors.push_back(e.what());
            }
        };
        for (const auto& [m, p] : cat.monthly) check_grid(p);
        for (const auto& [m, ps] : cat.daily)
            for (const auto& p : ps) check_grid(p);
        if (needs_quality(cfg, d.name))
            for (const auto& [m, p] : cat.quality) check_grid(p);

        for (const auto& h : cfg.hurricanes) {
            if (h.event < months.front() || h.event > months.back()) {
                f.errors.push_back(d.name + ": hurricane " + h.name + " event month " + h.event.str() +
                                   " outside available data " + months.front().str() + ".." + months.back().str());
                continue;
            }
            const EventWindow w = cfg.window_for(h);
            int absent = 0, absent_q = 0;
            for (int k = 0; k < w.length(); ++k) {
                const MonthIndex m = w.first() + k;
                const bool have = cat.monthly.count(m) || cat.daily.count(m);
                absent += !have;
                absent_q += have && !cat.quality.count(m);
            }
            if (absent)
                f.warnings.push_back(d.name + ": " + std::to_string(absent) + " month(s) of the " + h.name +
                                     " window have no radiance file");
            if (absent_q && needs_quality(cfg, d.name))
                f.warnings.push_back(d.name + ": " + std::to_string(absent_q) + " month(s) of the " + h.name +
                                     " window have no quality file; those pixels count as low quality");
        }

        if (needs_built(cfg, d.name)) {
            if (d.landcover && !d.built_fraction) {
                if (!fs::exists(*d.landcover)) f.errors.push_back(d.name + ": landcover not found: " + d.landcover->string());
            } else if (!fs::exists(d.built_fraction_path())) {
                f.errors.push_back(d.name + ": built fraction not found: " + d.built_fraction_path().string());
            } else {
                check_grid(d.built_fraction_path());
            }
        }
        f.catalogs[d.name] = std::move(cat);
    }
    return f;
}

void print_findings(const Findings& f, std::ostream& err) {
    for (const auto& w : f.warnings) err << "warning: " << w << "\n";
    for (const auto& e : f.errors) err << "error: " << e << "\n";
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

int max_imputation_window(const RunConfig& cfg, const std::string& dataset) {
    int w = 0;
    for (const auto& p : cfg.pipelines)
        if (p.dataset == dataset && p.config.quality_filter) w = std::max(w, p.config.imputation_window_months);
    return w;
}

std::string exclusion_reason(ExclusionReason r) {
    return r == ExclusionReason::below_damage_threshold ? "below_damage_threshold" : "missing_drop";
}

}  // namespace

std::vector<MonthIndex> DatasetCatalog::radiance_months() const {
    std::set<MonthIndex> all;
    for (const auto& [m, p] : monthly) all.insert(m);
    for (const auto& [m, p] : daily) all.insert(m);
    return {all.begin(), all.end()};
}

DatasetCatalog scan_dataset(const DatasetDescriptor& desc) {
    static const std::regex monthly_re(R"((\d{4}-\d{2})\.asc)");
    static const std::regex daily_re(R"((\d{4}-\d{2})-(\d{2})\.asc)");
    static const std::regex quality_re(R"((\d{4}-\d{2})\.qf\.asc)");

    DatasetCatalog cat;
    std::smatch m;
    if (fs::is_directory(desc.raster_dir)) {
        for (const auto& entry : fs::directory_iterator(desc.raster_dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (std::regex_match(name, m, monthly_re)) {
                if (auto mi = MonthIndex::parse(m[1].str())) cat.monthly[*mi] = entry.path();
            } else if (std::regex_match(name, m, daily_re)) {
                if (auto mi = MonthIndex::parse(m[1].str())) cat.daily[*mi].push_back(entry.path());
            }
        }
    }
    for (auto& [month, paths] : cat.daily) std::sort(paths.begin(), paths.end());
    if (fs::is_directory(desc.quality_dir)) {
        for (const auto& entry : fs::directory_iterator(desc.quality_dir)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (std::regex_match(name, m, quality_re))
                if (auto mi = MonthIndex::parse(m[1].str())) cat.quality[*mi] = entry.path();
        }
    }
    return cat;
}

RadianceStack load_radiance(const DatasetCatalog& catalog, MonthIndex first, MonthIndex last) {
    RadianceStack stack;
    for (const MonthIndex& m : catalog.radiance_months()) {
        if (m < first || m > last) continue;
        if (auto it = catalog.monthly.find(m); it != catalog.monthly.end()) {
            stack.push_back(m, read_grid(it->second));
        } else {
            std::vector<RasterGrid> days;
            for (const auto& p : catalog.daily.at(m)) days.push_back(read_grid(p));
            stack.push_back(m, monthly_median_composite(days));
        }
    }
    return stack;
}

QualityStack load_quality(const DatasetCatalog& catalog, const RadianceStack& radiance) {
    QualityStack q;
    for (std::size_t k = 0; k < radiance.size(); ++k) {
        const MonthIndex m = radiance.months[k];
        if (auto it = catalog.quality.find(m); it != catalog.quality.end()) {
            q.push_back(m, read_int_grid(it->second));
        } else {
            IntRaster blank(radiance.layers[k].spec);
            std::fill(blank.missing.begin(), blank.missing.end(), 1);
            q.push_back(m, std::move(blank));
        }
    }
    return q;
}

RasterGrid load_built_fraction(const DatasetDescriptor& desc, const GridSpec& grid) {
    if (desc.landcover && !desc.built_fraction)
        return class_fraction_resample(read_int_grid(*desc.landcover), grid, desc.built_class);
    RasterGrid bf = read_grid(desc.built_fraction_path());
    require_same_grid(bf, RasterGrid(grid), "built fraction");
    return bf;
}

fs::path series_path(const fs::path& out, const std::string& dataset, const std::string& methods,
                     const std::string& hurricane, const std::string& zone) {
    return out / safe_name(dataset) / methods / safe_name(hurricane) / (safe_name(zone) + ".csv");
}

int cmd_validate(const CommandOptions& opts) {
    auto cfg = load_or_report(opts);
    if (!cfg) return 2;
    const Findings f = check_config(*cfg);
    print_findings(f, *opts.err);

    auto& log = *opts.log;
    for (const auto& d : cfg->datasets) {
        log << "dataset " << d.name << " (" << dataset_name(d.kind) << ")";
        if (auto it = f.catalogs.find(d.name); it != f.catalogs.end()) {
            const auto months = it->second.radiance_months();
            if (!months.empty())
                log << ": " << months.size() << " months " << months.front().str() << ".." << months.back().str()
                    << ", " << it->second.quality.size() << " quality layers";
        }
        log << "\n";
    }
    for (const auto& h : cfg->hurricanes) {
        auto it = f.zones.find(h.name);
        log << "hurricane " << h.name << " " << h.event.str() << ": "
            << (it == f.zones.end() ? 0 : it->second.size()) << " zones\n";
    }
    log << cfg->pipelines.size() << " pipelines\n";
    log << (f.errors.empty() ? "ok" : std::to_string(f.errors.size()) + " error(s)") << "\n";
    return f.errors.empty() ? 0 : 1;
}

int cmd_extract(const CommandOptions& opts) {
    auto cfg = load_or_report(opts);
    if (!cfg) return 2;
    Findings f = check_config(*cfg);
    print_findings(f, *opts.err);
    if (!f.errors.empty()) return 1;

    const fs::path out = output_root(opts, *cfg);
    const int jobs = job_count(opts, *cfg);

    if (!opts.force) {
        std::size_t existing = 0;
        for (const auto& p : cfg->pipelines)
            for (const auto& h : cfg->hurricanes)
                for (const auto& z : f.zones[h.name])
                    existing += fs::exists(series_path(out, p.dataset, p.config.label(), h.name, z.zone_id));
        if (existing) {
            *opts.err << "error: " << existing << " series file(s) already exist under " << out.string()
                      << "; rerun with --force to overwrite\n";
            return 1;
        }
    }

    std::size_t failures = 0, written = 0;
    for (const auto& d : cfg->datasets) {
        if (!dataset_used(*cfg, d.name)) continue;
        std::vector<const PipelineSelection*> selected;
        for (const auto& p : cfg->pipelines)
            if (p.dataset == d.name) selected.push_back(&p);

        MonthIndex first = cfg->window_for(cfg->hurricanes.front()).first();
        MonthIndex last = cfg->window_for(cfg->hurricanes.front()).last();
        for (const auto& h : cfg->hurricanes) {
            first = std::min(first, cfg->window_for(h).first());
            last = std::max(last, cfg->window_for(h).last());
        }
        first = first - max_imputation_window(*cfg, d.name);

        RadianceStack radiance;
        std::optional<QualityStack> quality;
        std::optional<RasterGrid> built;
        try {
            radiance = load_radiance(f.catalogs.at(d.name), first, last);
            if (radiance.size() == 0) throw std::runtime_error("no radiance months inside the analysis windows");
            if (needs_quality(*cfg, d.name)) quality = load_quality(f.catalogs.at(d.name), radiance);
            if (needs_built(*cfg, d.name)) built = load_built_fraction(d, radiance.layers.front().spec);
        } catch (const std::exception& e) {
            *opts.err << "error: " << d.name << ": " << e.what() << "\n";
            failures += selected.size();
            continue;
        }
        const GridSpec grid = radiance.layers.front().spec;

        std::map<std::string, std::vector<ZoneMask>> masks;
        for (const auto& h : cfg->hurricanes) {
            auto& ms = masks[h.name];
            for (const auto& z : f.zones[h.name]) {
                ms.push_back(rasterize_zone(z, grid));
                if (ms.back().empty())
                    *opts.err << "warning: " << d.name << ": zone " << z.zone_id << " covers no pixel centers ("
                              << h.name << "); its series will be all missing\n";
            }
        }

        std::vector<std::string> messages(selected.size());
        std::vector<std::size_t> task_failures(selected.size(), 0), task_written(selected.size(), 0);
        parallel_for(selected.size(), jobs, [&](std::size_t i) {
            const auto& sel = *selected[i];
            const std::string label = sel.config.label();
            RadianceStack processed;
            try {
                processed = run_pipeline({radiance, quality ? &*quality : nullptr, built ? &*built : nullptr},
                                         sel.config);
            } catch (const std::exception& e) {
                messages[i] += "error: " + d.name + "/" + label + ": " + e.what() + "\n";
                task_failures[i] = 1;
                return;
            }
            for (const auto& h : cfg->hurricanes) {
                const auto& zones = f.zones[h.name];
                const auto& ms = masks[h.name];
                for (std::size_t z = 0; z < zones.size(); ++z) {
                    const fs::path path = series_path(out, d.name, label, h.name, zones[z].zone_id);
                    try {
                        std::error_code ec;
                        fs::create_directories(path.parent_path(), ec);
                        const ZoneSeries series =
                            build_zone_series(processed, ms[z], cfg->window_for(h), zones[z].zone_id);
                        write_series_csv(series, path, cfg->baseline_months);
                        ++task_written[i];
                    } catch (const std::exception& e) {
                        messages[i] += "error: " + path.string() + ": " + e.what() + "\n";
                        ++task_failures[i];
                    }
                }
            }
        });
        for (std::size_t i = 0; i < selected.size(); ++i) {
            *opts.err << messages[i];
            failures += task_failures[i];
            written += task_written[i];
        }
    }
    *opts.log << "wrote " << written << " series under " << out.string();
    if (failures) *opts.log << ", " << failures << " failure(s)";
    *opts.log << "\n";
    return failures ? 1 : 0;
}

int cmd_report(const CommandOptions& opts) {
    auto cfg = load_or_report(opts);
    if (!cfg) return 2;
    const fs::path out = output_root(opts, *cfg);
    const fs::path report_path = out / "report.csv";
    const fs::path case_path = out / "case_study.csv";
    if (!opts.force && (fs::exists(report_path) || fs::exists(case_path))) {
        *opts.err << "error: report outputs already exist under " << out.string() << "; rerun with --force\n";
        return 1;
    }

    std::map<std::string, std::vector<Zone>> zones;
    for (const auto& h : cfg->hurricanes) {
        try {
            zones[h.name] = read_zones(cfg->zones_for(h));
        } catch (const std::exception& e) {
            *opts.err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    std::vector<std::string> absent;
    std::vector<ConfigResult> results;
    std::map<fs::path, ZoneSeries> series_cache;
    for (const auto& p : cfg->pipelines) {
        ConfigResult r{p.config, {}};
        for (const auto& h : cfg->hurricanes) {
            for (const auto& z : zones[h.name]) {
                const fs::path path = series_path(out, p.dataset, p.config.label(), h.name, z.zone_id);
                if (!fs::exists(path)) {
                    absent.push_back(p.dataset + "/" + p.config.label() + "/" + h.name + "/" + z.zone_id);
                    continue;
                }
                try {
                    const auto& s = series_cache[path] = read_series_csv(path);
                    r.samples.push_back(
                        {z.zone_id, h.name, z.damage_ratio, z.population, event_drop(s, cfg->window_for(h), cfg->baseline_months)});
                } catch (const std::exception& e) {
                    *opts.err << "error: " << e.what() << "\n";
                    return 1;
                }
            }
        }
        results.push_back(std::move(r));
    }
    if (!absent.empty()) {
        *opts.err << "error: " << absent.size() << " extraction output(s) missing (run extract first):";
        for (std::size_t i = 0; i < absent.size() && i < 20; ++i) *opts.err << "\n  " << absent[i];
        if (absent.size() > 20) *opts.err << "\n  ...";
        *opts.err << "\n";
        return 1;
    }

    std::vector<PipelineConfig> expected;
    for (const auto& p : cfg->pipelines) expected.push_back(p.config);
    std::vector<std::string> hurricane_names;
    for (const auto& h : cfg->hurricanes) hurricane_names.push_back(h.name);

    CorrelationReport report;
    try {
        report = build_report(expected, results, cfg->min_damage, hurricane_names);
    } catch (const ReportError& e) {
        *opts.err << "error: " << e.what() << "\n";
        return 1;
    }

    // Case-study percent-change series for the most and least damaged zones.
    std::string cases = "hurricane,dataset,methods,group,zone_id,damage_ratio,year,month,mean_radiance,percent_change\n";
    for (const auto& h : cfg->hurricanes) {
        CaseStudySelection sel;
        try {
            sel = select_case_study_zones(zones[h.name], cfg->case_study_k, cfg->population_band);
        } catch (const ConfigError& e) {
            *opts.err << "error: " << h.name << ": " << e.what() << "\n";
            return 1;
        }
        for (const auto& p : cfg->pipelines) {
            for (const auto& [group, members] : {std::pair{"high", &sel.top}, std::pair{"low", &sel.bottom}}) {
                for (const auto& z : *members) {
                    const auto& s = series_cache.at(series_path(out, p.dataset, p.config.label(), h.name, z.zone_id));
                    for (std::size_t k = 0; k < s.values.size(); ++k) {
                        const MonthIndex m = s.start + static_cast<int>(k);
                        cases += h.name + "," + p.dataset + "," + p.config.label() + "," + group + "," + z.zone_id +
                                 "," + format_real(z.damage_ratio) + "," + std::to_string(m.year) + "," +
                                 std::to_string(m.month) + "," + format_real(s.values[k]) + "," +
                                 format_real(percent_change(s, m, cfg->baseline_months)) + "\n";
                    }
                }
            }
        }
    }

    nlohmann::json meta = {{"hurricanes", hurricane_names}, {"min_damage", cfg->min_damage}};
    nlohmann::json exclusions = nlohmann::json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto& ex : filter_zones(results[i].samples, cfg->min_damage).excluded)
            exclusions.push_back({{"dataset", cfg->pipelines[i].dataset},
                                  {"methods", results[i].config.label()},
                                  {"hurricane", ex.sample.hurricane},
                                  {"zone_id", ex.sample.zone_id},
                                  {"reason", exclusion_reason(ex.reason)}});
    }
    meta["exclusions"] = exclusions;

    try {
        fs::create_directories(out);
        write_report_csv(report, report_path);
        write_text(case_path, cases);
        write_text(out / "report_meta.json", meta.dump(2) + "\n");
    } catch (const std::exception& e) {
        *opts.err << "error: " << e.what() << "\n";
        return 1;
    }
    *opts.log << "wrote " << report.rows.size() << " correlation rows to " << report_path.string() << "\n";
    return 0;
}

int cmd_simulate(const CommandOptions& opts) {
    SimulationSpec sim;
    try {
        sim = load_simulation_spec(opts.config);
    } catch (const std::exception& e) {
        *opts.err << "error: " << e.what() << "\n";
        return 2;
    }
    const fs::path out = opts.out ? *opts.out : opts.config.parent_path() / "simulation";
    if (!opts.force && fs::exists(out / "oracle.csv")) {
        *opts.err << "error: " << (out / "oracle.csv").string() << " already exists; rerun with --force\n";
        return 1;
    }

    const Scene scene = generate_scene(sim.scene);
    const std::string ds = std::string(dataset_name(sim.scene.dataset));
    const fs::path raster_dir = out / ds;
    try {
        fs::create_directories(raster_dir);
        for (std::size_t k = 0; k < scene.radiance.size(); ++k) {
            const std::string m = scene.radiance.months[k].str();
            write_grid(scene.radiance.layers[k], raster_dir / (m + ".asc"));
            write_grid(scene.quality.layers[k], raster_dir / (m + ".qf.asc"));
        }
        write_grid(scene.built_fraction, raster_dir / "built_fraction.asc");
        write_zones(sim.scene.zones, out / "zones.geojson");

        std::string truth = "zone_id,damage_ratio,base_radiance,true_drop\n";
        for (const auto& t : scene.truth)
            truth += t.zone_id + "," + format_real(t.damage_ratio) + "," + format_real(t.base_radiance) + "," +
                     format_real(t.true_drop) + "\n";
        write_text(out / "truth.csv", truth);
    } catch (const std::exception& e) {
        *opts.err << "error: " << e.what() << "\n";
        return 1;
    }

    std::vector<std::string> rows(sim.configs.size()), errors(sim.configs.size());
    parallel_for(sim.configs.size(), opts.jobs.value_or(1), [&](std::size_t i) {
        try {
            const OracleResult r = oracle_check(scene, sim.configs[i], sim.min_damage);
            std::size_t n = 0;
            for (const auto& s : r.samples) n += s.drop && s.damage_ratio >= sim.min_damage;
            rows[i] = r.config.label() + "," + format_real(r.recovered_pcc) + "," + format_real(r.truth_pcc) + "," +
                      std::to_string(n) + "\n";
        } catch (const std::exception& e) {
            errors[i] = sim.configs[i].label() + ": " + e.what();
        }
    });
    std::string oracle = "config,recovered_pcc,truth_pcc,n_samples\n";
    int failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!errors[i].empty()) {
            *opts.err << "error: " << errors[i] << "\n";
            ++failed;
            continue;
        }
        oracle += rows[i];
    }

    RunConfig run;
    run.source = (out / "run.json").string();
    DatasetDescriptor desc;
    desc.name = ds;
    desc.kind = sim.scene.dataset;
    desc.raster_dir = raster_dir;
    desc.quality_dir = raster_dir;
    run.datasets.push_back(desc);
    run.zones = out / "zones.geojson";
    run.hurricanes.push_back({"synthetic", sim.scene.window.event_month, std::nullopt});
    for (const auto& c : sim.configs) run.pipelines.push_back({ds, c});
    run.output_dir = out / "extract";
    run.min_damage = sim.min_damage;
    run.months_before = sim.scene.window.months_before;
    run.months_after = sim.scene.window.months_after;

    try {
        write_text(out / "oracle.csv", oracle);
        write_text(out / "run.json", format_run_config(run));
    } catch (const std::exception& e) {
        *opts.err << "error: " << e.what() << "\n";
        return 1;
    }
    *opts.log << "scene " << scene.radiance.size() << " months, " << sim.scene.zones.size() << " zones -> "
              << out.string() << "\n";
    return failed ? 1 : 0;
}

}  // namespace ntl
