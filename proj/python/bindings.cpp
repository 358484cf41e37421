#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ntl/analysis.hpp"
#include "ntl/commands.hpp"
#include "ntl/grid_io.hpp"
#include "ntl/pipeline.hpp"
#include "ntl/quality.hpp"
#include "ntl/resample.hpp"
#include "ntl/run_config.hpp"
#include "ntl/synthetic.hpp"
#include "ntl/timeseries.hpp"
#include "ntl/zones.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace ntl;

namespace {

py::array_t<double> raster_to_numpy(const RasterGrid& g) {
    py::array_t<double> arr({g.spec.nrows, g.spec.ncols});
    auto view = arr.mutable_unchecked<2>();
    for (int r = 0; r < g.spec.nrows; ++r)
        for (int c = 0; c < g.spec.ncols; ++c)
            view(r, c) = g.is_missing(r, c) ? std::numeric_limits<double>::quiet_NaN() : g.values[g.spec.offset(r, c)];
    return arr;
}

RasterGrid raster_from_numpy(const GridSpec& spec, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 2 || arr.shape(0) != spec.nrows || arr.shape(1) != spec.ncols)
        throw ContractViolation("array shape does not match (nrows, ncols)");
    RasterGrid g(spec);
    auto view = arr.unchecked<2>();
    for (int r = 0; r < spec.nrows; ++r)
        for (int c = 0; c < spec.ncols; ++c) {
            const double v = view(r, c);
            if (std::isnan(v))
                g.set_missing(r, c);
            else
                g.set(r, c, v);
        }
    return g;
}

ThresholdMode mode_from(const std::string& s) {
    if (s == "none") return ThresholdMode::none;
    if (s == "clip") return ThresholdMode::clip;
    if (s == "remove") return ThresholdMode::remove;
    throw ContractViolation("threshold mode must be none, clip or remove");
}

Dataset dataset_from(const std::string& s) {
    auto d = parse_dataset(s);
    if (!d) throw ConfigError("unknown dataset '" + s + "'");
    return *d;
}

MonthIndex month_from(const std::string& s) {
    auto m = MonthIndex::parse(s);
    if (!m) throw ConfigError("expected YYYY-MM, got '" + s + "'");
    return *m;
}

ZoneSeries series_from(const std::string& start, const std::vector<std::optional<double>>& values) {
    return ZoneSeries{"", month_from(start), values};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nighttime-light pre-processing, zonal series and damage correlation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<StatsError>(m, "StatsError", PyExc_ValueError);
    py::register_exception<ReportError>(m, "ReportError", PyExc_RuntimeError);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int ncols, int nrows, double x, double y, double cs) {
                 GridSpec g{ncols, nrows, x, y, cs};
                 g.require_valid();
                 return g;
             }),
             py::arg("ncols"), py::arg("nrows"), py::arg("x_origin") = 0.0, py::arg("y_origin") = 0.0,
             py::arg("cell_size") = 1.0)
        .def_readonly("ncols", &GridSpec::ncols)
        .def_readonly("nrows", &GridSpec::nrows)
        .def_readonly("x_origin", &GridSpec::x_origin)
        .def_readonly("y_origin", &GridSpec::y_origin)
        .def_readonly("cell_size", &GridSpec::cell_size)
        .def("center", [](const GridSpec& g, int r, int c) { auto p = g.center(r, c); return py::make_tuple(p.x, p.y); })
        .def("cell_at",
             [](const GridSpec& g, double x, double y) -> std::optional<std::pair<int, int>> {
                 auto cell = g.cell_at(x, y);
                 if (!cell) return std::nullopt;
                 return std::pair{cell->row, cell->col};
             })
        .def(py::self == py::self)
        .def("__repr__", [](const GridSpec& g) {
            std::ostringstream ss;
            ss << "GridSpec(ncols=" << g.ncols << ", nrows=" << g.nrows << ", x_origin=" << g.x_origin
               << ", y_origin=" << g.y_origin << ", cell_size=" << g.cell_size << ")";
            return ss.str();
        });

    py::class_<RasterGrid>(m, "RasterGrid")
        .def_static("from_numpy", &raster_from_numpy, py::arg("spec"), py::arg("values"),
                    "Build from a (nrows, ncols) array; NaN cells are missing.")
        .def_readonly("spec", &RasterGrid::spec)
        .def("to_numpy", &raster_to_numpy, "Values as (nrows, ncols) float array, missing as NaN.")
        .def("valid_count", &RasterGrid::valid_count)
        .def(py::self == py::self);

    py::class_<IntRaster>(m, "IntRaster")
        .def_readonly("spec", &IntRaster::spec)
        .def("values", [](const IntRaster& g) {
            py::array_t<std::int64_t> arr({g.spec.nrows, g.spec.ncols});
            std::copy(g.values.begin(), g.values.end(), arr.mutable_data());
            return arr;
        })
        .def("missing", [](const IntRaster& g) {
            py::array_t<bool> arr({g.spec.nrows, g.spec.ncols});
            std::transform(g.missing.begin(), g.missing.end(), arr.mutable_data(), [](auto v) { return v != 0; });
            return arr;
        });

    m.def("read_grid", &read_grid, py::arg("path"));
    m.def("read_int_grid", &read_int_grid, py::arg("path"));
    m.def("write_grid", py::overload_cast<const RasterGrid&, const std::filesystem::path&, double>(&write_grid),
          py::arg("grid"), py::arg("path"), py::arg("nodata") = -9999.0);
    m.def("class_fraction_resample", &class_fraction_resample, py::arg("src"), py::arg("target"),
          py::arg("class_label") = 6);

    py::class_<Zone>(m, "Zone")
        .def_readonly("zone_id", &Zone::zone_id)
        .def_readonly("damage_ratio", &Zone::damage_ratio)
        .def_readonly("population", &Zone::population)
        .def_property_readonly("rings", [](const Zone& z) {
            std::vector<std::vector<std::pair<double, double>>> out;
            for (const auto& ring : z.geometry.rings) {
                auto& r = out.emplace_back();
                for (const auto& p : ring) r.emplace_back(p.x, p.y);
            }
            return out;
        });
    m.def("read_zones", &read_zones, py::arg("path"));
    m.def(
        "point_in_polygon",
        [](double x, double y, const std::vector<std::vector<std::pair<double, double>>>& rings) {
            PolygonSet poly;
            for (const auto& r : rings) {
                auto& ring = poly.rings.emplace_back();
                for (const auto& [px, py_] : r) ring.push_back({px, py_});
            }
            return point_in_polygon({x, y}, poly);
        },
        py::arg("x"), py::arg("y"), py::arg("rings"));
    m.def(
        "zone_mask",
        [](const Zone& zone, const GridSpec& spec) {
            const ZoneMask mask = rasterize_zone(zone, spec);
            py::array_t<bool> arr({spec.nrows, spec.ncols});
            std::transform(mask.inside.begin(), mask.inside.end(), arr.mutable_data(), [](auto v) { return v != 0; });
            return arr;
        },
        py::arg("zone"), py::arg("spec"));
    m.def(
        "zonal_mean",
        [](const RasterGrid& raster, const Zone& zone) { return zonal_mean(raster, rasterize_zone(zone, raster.spec)); },
        py::arg("raster"), py::arg("zone"));

    py::class_<QualityFlags>(m, "QualityFlags")
        .def_property_readonly("day", [](const QualityFlags& f) { return f.day_night == DayNight::day; })
        .def_property_readonly("background", [](const QualityFlags& f) { return static_cast<int>(f.background); })
        .def_property_readonly("cloud_mask_quality",
                               [](const QualityFlags& f) { return static_cast<int>(f.cloud_mask_quality); })
        .def_property_readonly("cloud_confidence",
                               [](const QualityFlags& f) { return static_cast<int>(f.cloud_confidence); })
        .def_readonly("shadow", &QualityFlags::shadow)
        .def_readonly("cirrus", &QualityFlags::cirrus)
        .def_readonly("snow_ice", &QualityFlags::snow_ice);
    m.def("decode_vnp46a2_quality", &decode_vnp46a2_quality, py::arg("qf"));
    m.def("encode_vnp46a2_quality", &encode_vnp46a2_quality, py::arg("flags"));
    m.def("is_high_quality_vnp46a2", [](std::uint32_t qf) { return is_high_quality_vnp46a2(decode_vnp46a2_quality(qf)); },
          py::arg("qf"));
    m.def("is_high_quality_vscntl", &is_high_quality_vscntl, py::arg("cloud_free_count"));

    m.def(
        "threshold",
        [](const RasterGrid& r, const std::string& mode, double lo, double hi) { return threshold(r, mode_from(mode), lo, hi); },
        py::arg("raster"), py::arg("mode"), py::arg("lo") = 0.0, py::arg("hi") = 50.0);
    m.def("apply_built_mask", &apply_built_mask, py::arg("raster"), py::arg("built_fraction"),
          py::arg("threshold") = 0.5);
    m.def(
        "impute_pixel",
        [](const std::vector<std::tuple<int, double, bool>>& history, int t, int window) {
            PixelHistory h;
            for (const auto& [month, value, hq] : history) h.observations.push_back({month, value, hq});
            return impute_pixel(h, t, window);
        },
        py::arg("history"), py::arg("t"), py::arg("window") = 12,
        "history: [(month_index, value, high_quality)], month indices strictly increasing.");
    m.def(
        "monthly_median_composite",
        [](const std::vector<RasterGrid>& days) { return monthly_median_composite(days); }, py::arg("daily"));

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def_static(
            "from_label",
            [](const std::string& dataset, const std::string& label) {
                PipelineConfig base;
                base.dataset = dataset_from(dataset);
                auto c = config_from_label(label, base);
                c.validate();
                return c;
            },
            py::arg("dataset"), py::arg("label"))
        .def_property_readonly("dataset", [](const PipelineConfig& c) { return std::string(dataset_name(c.dataset)); })
        .def_property_readonly("label", &PipelineConfig::label)
        .def_readwrite("built_fraction_threshold", &PipelineConfig::built_fraction_threshold)
        .def_readwrite("threshold_lo", &PipelineConfig::threshold_lo)
        .def_readwrite("threshold_hi", &PipelineConfig::threshold_hi)
        .def_readwrite("imputation_window_months", &PipelineConfig::imputation_window_months)
        .def("__repr__", [](const PipelineConfig& c) {
            return "PipelineConfig(" + std::string(dataset_name(c.dataset)) + ", " + c.label() + ")";
        });
    m.def(
        "enumerate_configs", [](const std::string& dataset) { return enumerate_configs(dataset_from(dataset)); },
        py::arg("dataset"));

    m.def(
        "rolling_baseline",
        [](const std::string& start, const std::vector<std::optional<double>>& values, const std::string& t, int w) {
            return rolling_baseline(series_from(start, values), month_from(t), w);
        },
        py::arg("start"), py::arg("values"), py::arg("t"), py::arg("months") = 6);
    m.def(
        "percent_change",
        [](const std::string& start, const std::vector<std::optional<double>>& values, const std::string& t, int w) {
            return percent_change(series_from(start, values), month_from(t), w);
        },
        py::arg("start"), py::arg("values"), py::arg("t"), py::arg("months") = 6);
    m.def(
        "event_drop",
        [](const std::string& start, const std::vector<std::optional<double>>& values, const std::string& event, int w) {
            return event_drop(series_from(start, values), EventWindow{month_from(event)}, w);
        },
        py::arg("start"), py::arg("values"), py::arg("event"), py::arg("months") = 6);

    m.def(
        "pearson", [](const std::vector<double>& xs, const std::vector<double>& ys) { return pearson(xs, ys); },
        py::arg("xs"), py::arg("ys"));

    m.def(
        "simulate_oracle",
        [](const std::string& spec_json) {
            const SimulationSpec sim = parse_simulation_spec(spec_json, ".");
            const Scene scene = generate_scene(sim.scene);
            std::vector<py::dict> rows;
            for (const auto& c : sim.configs) {
                const OracleResult r = oracle_check(scene, c, sim.min_damage);
                py::dict d;
                d["config"] = r.config.label();
                d["recovered_pcc"] = r.recovered_pcc;
                d["truth_pcc"] = r.truth_pcc;
                rows.push_back(d);
            }
            return rows;
        },
        py::arg("spec_json"), "Generate a scene from a JSON scene spec and score each of its configs.");

    m.def(
        "run_command",
        [](const std::string& name, const std::filesystem::path& config, std::optional<std::filesystem::path> out,
           bool force, std::optional<int> jobs) {
            CommandOptions opts;
            opts.config = config;
            opts.out = std::move(out);
            opts.force = force;
            opts.jobs = jobs;
            py::gil_scoped_release release;
            if (name == "validate") return cmd_validate(opts);
            if (name == "extract") return cmd_extract(opts);
            if (name == "report") return cmd_report(opts);
            if (name == "simulate") return cmd_simulate(opts);
            throw ConfigError("unknown command '" + name + "'");
        },
        py::arg("name"), py::arg("config"), py::arg("out") = std::nullopt, py::arg("force") = false,
        py::arg("jobs") = std::nullopt, "Run a CLI subcommand in-process; returns its exit code.");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
