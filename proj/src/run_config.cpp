#include "ntl/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ntl/errors.hpp"
#include "ntl/grid_io.hpp"

namespace ntl {
namespace {

using nlohmann::json;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, e.what());
    }
}

// Typed field access with the field path in every error.
class Fields {
public:
    Fields(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const char* key) const { return obj_.contains(key); }
    const json& raw(const char* key) const {
        if (!has(key)) throw ConfigError(path(key) + ": required field missing");
        return obj_.at(key);
    }
    std::string path(const char* key) const { return where_.empty() ? key : where_ + "." + key; }

    std::string str(const char* key) const {
        const auto& v = raw(key);
        if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
        return v.get<std::string>();
    }
    std::string str(const char* key, const std::string& def) const { return has(key) ? str(key) : def; }

    double real(const char* key) const {
        const auto& v = raw(key);
        if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
        return v.get<double>();
    }
    double real(const char* key, double def) const { return has(key) ? real(key) : def; }

    long long integer(const char* key) const {
        const auto& v = raw(key);
        if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
        return v.get<long long>();
    }
    long long integer(const char* key, long long def) const { return has(key) ? integer(key) : def; }

    MonthIndex month(const char* key) const {
        const auto s = str(key);
        auto m = MonthIndex::parse(s);
        if (!m) throw ConfigError(path(key) + ": expected YYYY-MM, got '" + s + "'");
        return *m;
    }

    fs::path file(const char* key, const fs::path& base) const {
        fs::path p = str(key);
        return p.is_absolute() ? p : base / p;
    }

private:
    const json& obj_;
    std::string where_;
};

Dataset dataset_kind(const std::string& s, const std::string& where) {
    auto d = parse_dataset(s);
    if (!d) throw ConfigError(where + ": unknown dataset kind '" + s + "' (VSC_NTL or VNP46A2)");
    return *d;
}

PipelineConfig tunables_from(const json& j, const std::string& where, PipelineConfig base) {
    Fields f(j, where);
    base.threshold_lo = f.real("threshold_lo", base.threshold_lo);
    base.threshold_hi = f.real("threshold_hi", base.threshold_hi);
    base.built_fraction_threshold = f.real("built_fraction_threshold", base.built_fraction_threshold);
    base.imputation_window_months =
        static_cast<int>(f.integer("imputation_window_months", base.imputation_window_months));
    return base;
}

GridSpec grid_from(const json& j, const std::string& where) {
    Fields f(j, where);
    GridSpec g;
    g.ncols = static_cast<int>(f.integer("ncols"));
    g.nrows = static_cast<int>(f.integer("nrows"));
    g.x_origin = f.real("xllcorner");
    g.y_origin = f.real("yllcorner");
    g.cell_size = f.real("cellsize");
    if (!g.valid()) throw ConfigError(where + ": invalid grid");
    return g;
}

json grid_to_json(const GridSpec& g) {
    return {{"ncols", g.ncols}, {"nrows", g.nrows}, {"xllcorner", g.x_origin}, {"yllcorner", g.y_origin},
            {"cellsize", g.cell_size}};
}

std::string relative_or_absolute(const fs::path& p, const fs::path& base) {
    std::error_code ec;
    auto rel = fs::relative(p, base, ec);
    return ec || rel.empty() ? p.generic_string() : rel.generic_string();
}

}  // namespace

const DatasetDescriptor& RunConfig::dataset(const std::string& name) const {
    for (const auto& d : datasets)
        if (d.name == name) return d;
    throw ConfigError("unknown dataset '" + name + "'");
}

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir, const std::string& source) {
    const json doc = parse_json(text, source);
    Fields top(doc, "");
    RunConfig cfg;
    cfg.source = source;

    const auto& datasets = top.raw("datasets");
    if (!datasets.is_array() || datasets.empty()) throw ConfigError("datasets: expected a non-empty array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        const std::string where = "datasets[" + std::to_string(i) + "]";
        Fields f(datasets[i], where);
        DatasetDescriptor d;
        d.kind = dataset_kind(f.str("kind"), f.path("kind"));
        d.name = f.str("name", std::string(dataset_name(d.kind)));
        if (d.name.empty() || d.name.find('/') != std::string::npos)
            throw ConfigError(f.path("name") + ": must be a non-empty name without '/'");
        if (!names.insert(d.name).second) throw ConfigError(f.path("name") + ": duplicate dataset name " + d.name);
        for (const auto& other : cfg.datasets)
            if (other.kind == d.kind) throw ConfigError(f.path("kind") + ": each dataset kind may appear only once");
        d.raster_dir = f.file("raster_dir", base_dir);
        d.quality_dir = f.has("quality_dir") ? f.file("quality_dir", base_dir) : d.raster_dir;
        if (f.has("built_fraction")) d.built_fraction = f.file("built_fraction", base_dir);
        if (f.has("landcover")) d.landcover = f.file("landcover", base_dir);
        d.built_class = f.integer("built_class", 6);
        if (f.has("grid")) d.expected_grid = grid_from(f.raw("grid"), f.path("grid"));
        cfg.datasets.push_back(std::move(d));
    }

    cfg.zones = top.file("zones", base_dir);

    const auto& hurricanes = top.raw("hurricanes");
    if (!hurricanes.is_array() || hurricanes.empty()) throw ConfigError("hurricanes: expected a non-empty array");
    std::set<std::string> hnames;
    for (std::size_t i = 0; i < hurricanes.size(); ++i) {
        Fields f(hurricanes[i], "hurricanes[" + std::to_string(i) + "]");
        HurricaneSpec h;
        h.name = f.str("name");
        if (h.name.empty() || h.name.find('/') != std::string::npos)
            throw ConfigError(f.path("name") + ": must be a non-empty name without '/'");
        if (!hnames.insert(h.name).second) throw ConfigError(f.path("name") + ": duplicate hurricane " + h.name);
        h.event = f.month("event");
        if (f.has("zones")) h.zones = f.file("zones", base_dir);
        cfg.hurricanes.push_back(std::move(h));
    }

    const PipelineConfig defaults =
        top.has("pipeline_defaults") ? tunables_from(top.raw("pipeline_defaults"), "pipeline_defaults", {}) : PipelineConfig{};

    const json pipelines = top.has("pipelines") ? top.raw("pipelines") : json("all");
    if (pipelines.is_string()) {
        if (pipelines.get<std::string>() != "all") throw ConfigError("pipelines: expected \"all\" or an array");
        for (const auto& d : cfg.datasets)
            for (auto c : enumerate_configs(d.kind, defaults)) cfg.pipelines.push_back({d.name, c});
    } else if (pipelines.is_array()) {
        for (std::size_t i = 0; i < pipelines.size(); ++i) {
            Fields f(pipelines[i], "pipelines[" + std::to_string(i) + "]");
            const std::string ds = f.str("dataset");
            const DatasetDescriptor* desc = nullptr;
            for (const auto& d : cfg.datasets)
                if (d.name == ds) desc = &d;
            if (!desc) throw ConfigError(f.path("dataset") + ": unknown dataset '" + ds + "'");
            PipelineConfig base = tunables_from(pipelines[i], "pipelines[" + std::to_string(i) + "]", defaults);
            base.dataset = desc->kind;
            PipelineConfig c;
            try {
                c = config_from_label(f.str("methods"), base);
                c.validate();
            } catch (const ConfigError& e) {
                throw ConfigError(f.path("methods") + ": " + e.what());
            }
            for (const auto& p : cfg.pipelines)
                if (p.dataset == ds && p.config.label() == c.label())
                    throw ConfigError(f.path("methods") + ": duplicate pipeline " + ds + "/" + c.label());
            cfg.pipelines.push_back({ds, c});
        }
    } else {
        throw ConfigError("pipelines: expected \"all\" or an array");
    }
    for (const auto& p : cfg.pipelines) {
        try {
            p.config.validate();
        } catch (const ConfigError& e) {
            throw ConfigError("pipelines: " + p.dataset + ": " + e.what());
        }
    }

    cfg.output_dir = top.has("output_dir") ? top.file("output_dir", base_dir) : base_dir / "out";
    cfg.min_damage = top.real("min_damage", 0.01);
    cfg.jobs = static_cast<int>(top.integer("jobs", 1));
    if (cfg.jobs < 1) throw ConfigError("jobs: must be >= 1");
    cfg.case_study_k = static_cast<int>(top.integer("case_study_k", 3));
    if (cfg.case_study_k < 1) throw ConfigError("case_study_k: must be >= 1");
    cfg.months_before = static_cast<int>(top.integer("months_before", 12));
    cfg.months_after = static_cast<int>(top.integer("months_after", 12));
    cfg.baseline_months = static_cast<int>(top.integer("baseline_months", 6));
    if (cfg.months_before < 1 || cfg.months_after < 0) throw ConfigError("months_before/months_after: bad window");
    if (cfg.baseline_months < 1) throw ConfigError("baseline_months: must be >= 1");
    if (top.has("population_band")) {
        const auto& b = top.raw("population_band");
        if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer())
            throw ConfigError("population_band: expected [min, max] integers");
        cfg.population_band = PopulationBand{b[0].get<std::int64_t>(), b[1].get<std::int64_t>()};
    }
    return cfg;
}

RunConfig load_run_config(const fs::path& path) {
    return parse_run_config(slurp(path), path.parent_path().empty() ? fs::path(".") : path.parent_path(),
                            path.string());
}

std::string format_run_config(const RunConfig& cfg) {
    const fs::path base = cfg.source.empty() ? fs::path(".") : fs::path(cfg.source).parent_path();
    json datasets = json::array();
    for (const auto& d : cfg.datasets) {
        json j = {{"name", d.name},
                  {"kind", d.kind == Dataset::vsc_ntl ? "VSC_NTL" : "VNP46A2"},
                  {"raster_dir", relative_or_absolute(d.raster_dir, base)},
                  {"quality_dir", relative_or_absolute(d.quality_dir, base)}};
        if (d.built_fraction) j["built_fraction"] = relative_or_absolute(*d.built_fraction, base);
        if (d.landcover) {
            j["landcover"] = relative_or_absolute(*d.landcover, base);
            j["built_class"] = d.built_class;
        }
        if (d.expected_grid) j["grid"] = grid_to_json(*d.expected_grid);
        datasets.push_back(j);
    }
    json hurricanes = json::array();
    for (const auto& h : cfg.hurricanes) {
        json j = {{"name", h.name}, {"event", h.event.str()}};
        if (h.zones) j["zones"] = relative_or_absolute(*h.zones, base);
        hurricanes.push_back(j);
    }
    json pipelines = json::array();
    for (const auto& p : cfg.pipelines)
        pipelines.push_back({{"dataset", p.dataset},
                             {"methods", p.config.label()},
                             {"threshold_lo", p.config.threshold_lo},
                             {"threshold_hi", p.config.threshold_hi},
                             {"built_fraction_threshold", p.config.built_fraction_threshold},
                             {"imputation_window_months", p.config.imputation_window_months}});
    json doc = {{"datasets", datasets},
                {"zones", relative_or_absolute(cfg.zones, base)},
                {"hurricanes", hurricanes},
                {"pipelines", pipelines},
                {"output_dir", relative_or_absolute(cfg.output_dir, base)},
                {"min_damage", cfg.min_damage},
                {"jobs", cfg.jobs},
                {"case_study_k", cfg.case_study_k},
                {"months_before", cfg.months_before},
                {"months_after", cfg.months_after},
                {"baseline_months", cfg.baseline_months}};
    if (cfg.population_band) doc["population_band"] = {cfg.population_band->min, cfg.population_band->max};
    return doc.dump(2) + "\n";
}

SimulationSpec parse_simulation_spec(const std::string& text, const fs::path& base_dir, const std::string& source) {
    const json doc = parse_json(text, source);
    Fields top(doc, "");
    SimulationSpec sim;
    SceneSpec& s = sim.scene;

    const long long seed = top.integer("seed", 0);
    if (seed < 0) throw ConfigError("seed: must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
    s.dataset = dataset_kind(top.str("dataset", "VNP46A2"), "dataset");
    s.window.event_month = top.has("event_month") ? top.month("event_month") : MonthIndex{2018, 10};
    s.window.months_before = static_cast<int>(top.integer("months_before", 12));
    s.window.months_after = static_cast<int>(top.integer("months_after", 12));

    TiledLayout layout;
    if (top.has("layout")) {
        Fields l(top.raw("layout"), "layout");
        layout.zone_rows = static_cast<int>(l.integer("zone_rows", layout.zone_rows));
        layout.zone_cols = static_cast<int>(l.integer("zone_cols", layout.zone_cols));
        layout.zone_cells = static_cast<int>(l.integer("zone_cells", layout.zone_cells));
        layout.margin_cells = static_cast<int>(l.integer("margin_cells", layout.margin_cells));
        layout.cell_size = l.real("cell_size", layout.cell_size);
        layout.x_origin = l.real("x_origin", layout.x_origin);
        layout.y_origin = l.real("y_origin", layout.y_origin);
    }
    if (layout.zone_rows < 1 || layout.zone_cols < 1 || layout.zone_cells < 1 || layout.margin_cells < 0 ||
        !(layout.cell_size > 0))
        throw ConfigError("layout: zone_rows, zone_cols, zone_cells must be >= 1 and cell_size > 0");
    const std::size_t n_zones = static_cast<std::size_t>(layout.zone_rows) * static_cast<std::size_t>(layout.zone_cols);

    std::vector<double> damage;
    if (top.has("damage_ratios")) {
        const auto& d = top.raw("damage_ratios");
        if (!d.is_array()) throw ConfigError("damage_ratios: expected an array");
        for (const auto& v : d) {
            if (!v.is_number()) throw ConfigError("damage_ratios: expected numbers");
            damage.push_back(v.get<double>());
        }
    } else {
        const auto& r = top.has("damage_range") ? top.raw("damage_range") : json::array({0.01, 0.6});
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            throw ConfigError("damage_range: expected [lo, hi]");
        damage = spread(n_zones, r[0].get<double>(), r[1].get<double>());
    }
    for (double d : damage)
        if (!(d >= 0.0 && d <= 1.0)) throw ConfigError("damage_ratios: values must lie in [0,1]");
    s.grid = tiled_grid(layout);
    s.zones = tiled_zones(layout, damage);

    if (top.has("base_radiance")) {
        const auto& b = top.raw("base_radiance");
        s.base_radiance.clear();
        if (b.is_number()) {
            s.base_radiance.push_back(b.get<double>());
        } else if (b.is_array()) {
            for (const auto& v : b) {
                if (!v.is_number()) throw ConfigError("base_radiance: expected numbers");
                s.base_radiance.push_back(v.get<double>());
            }
        } else {
            throw ConfigError("base_radiance: expected a number or an array");
        }
    }
    s.background_radiance = top.real("background_radiance", s.background_radiance);
    s.texture_sigma = top.real("texture_sigma", s.texture_sigma);
    s.drop_gain = top.real("drop_gain", s.drop_gain);

    if (top.has("noise")) {
        Fields n(top.raw("noise"), "noise");
        NoiseSpec& ns = s.noise;
        ns.gaussian_sigma = n.real("gaussian_sigma", 0.0);
        ns.cloud_rate = n.real("cloud_rate", 0.0);
        ns.corruption_scale = n.real("corruption_scale", 0.0);
        const auto mode = n.str("corruption_mode", "attenuate");
        if (mode == "attenuate")
            ns.corruption_mode = CorruptionMode::attenuate;
        else if (mode == "replace_with_base")
            ns.corruption_mode = CorruptionMode::replace_with_base;
        else
            throw ConfigError("noise.corruption_mode: expected attenuate or replace_with_base");
        if (n.has("cloud_months")) {
            const auto& cm = n.raw("cloud_months");
            if (!cm.is_array()) throw ConfigError("noise.cloud_months: expected an array of YYYY-MM");
            for (const auto& v : cm) {
                auto m = v.is_string() ? MonthIndex::parse(v.get<std::string>()) : std::nullopt;
                if (!m) throw ConfigError("noise.cloud_months: expected YYYY-MM strings");
                ns.cloud_months.push_back(*m);
            }
        }
        ns.bloom_rate = n.real("bloom_rate", 0.0);
        if (n.has("bloom_range")) {
            const auto& r = n.raw("bloom_range");
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
                throw ConfigError("noise.bloom_range: expected [lo, hi]");
            ns.bloom_min = r[0].get<double>();
            ns.bloom_max = r[1].get<double>();
        }
        if (n.has("built_fraction")) ns.built_fraction_map = read_grid(n.file("built_fraction", base_dir));
    }

    PipelineConfig defaults =
        top.has("pipeline_defaults") ? tunables_from(top.raw("pipeline_defaults"), "pipeline_defaults", {}) : PipelineConfig{};
    defaults.dataset = s.dataset;
    const json configs = top.has("configs") ? top.raw("configs") : json("all");
    if (configs.is_string() && configs.get<std::string>() == "all") {
        sim.configs = enumerate_configs(s.dataset, defaults);
    } else if (configs.is_array()) {
        for (const auto& c : configs) {
            if (!c.is_string()) throw ConfigError("configs: expected method labels");
            try {
                auto cfg = config_from_label(c.get<std::string>(), defaults);
                cfg.validate();
                sim.configs.push_back(cfg);
            } catch (const ConfigError& e) {
                throw ConfigError(std::string("configs: ") + e.what());
            }
        }
    } else {
        throw ConfigError("configs: expected \"all\" or an array of labels");
    }
    sim.min_damage = top.real("min_damage", 0.01);

    s.validate();
    return sim;
}

SimulationSpec load_simulation_spec(const fs::path& path) {
    return parse_simulation_spec(slurp(path), path.parent_path().empty() ? fs::path(".") : path.parent_path(),
                                 path.string());
}

}  // namespace ntl
