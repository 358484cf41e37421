// ntlpipe: nighttime-light pre-processing and hurricane damage correlation.
//
//   ntlpipe validate --config run.json
//   ntlpipe extract  --config run.json [--out DIR] [--force] [--jobs N]
//   ntlpipe report   --config run.json [--out DIR] [--force]
//   ntlpipe simulate --config scene.json [--out DIR] [--force] [--jobs N]

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ntl/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Nighttime-light pre-processing pipeline and damage correlation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config, out;
    bool force = false;
    int jobs = 0;
    app.add_option("--config", config, "run config (validate/extract/report) or scene spec (simulate)")->required();
    app.add_option("--out", out, "output directory, overrides the config");
    app.add_flag("--force", force, "overwrite existing outputs");
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "check a run config and its input files");
    auto* extract = app.add_subcommand("extract", "write per-zone monthly series for every pipeline");
    auto* report = app.add_subcommand("report", "correlate event drops with damage ratios");
    auto* simulate = app.add_subcommand("simulate", "generate a synthetic scene and score every pipeline on it");

    CLI11_PARSE(app, argc, argv);

    ntl::CommandOptions opts;
    opts.config = config;
    if (!out.empty()) opts.out = out;
    opts.force = force;
    if (jobs > 0) opts.jobs = jobs;

    try {
        if (validate->parsed()) return ntl::cmd_validate(opts);
        if (extract->parsed()) return ntl::cmd_extract(opts);
        if (report->parsed()) return ntl::cmd_report(opts);
        if (simulate->parsed()) return ntl::cmd_simulate(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
