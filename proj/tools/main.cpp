#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ksigma/experiments.hpp"
#include "ksigma/report.hpp"
#include "ksigma/simd.hpp"

namespace fs = std::filesystem;
using namespace ksigma;

namespace {

struct CliConfig {
    ExperimentOptions opt;
    std::string out_dir = "out";
    std::string format = "csv+svg";
};

using Runner = std::function<ExperimentResult(const ExperimentOptions&)>;

const std::vector<std::pair<std::string, Runner>>& runners() {
    static const std::vector<std::pair<std::string, Runner>> r = {
        {"fig1", [](const ExperimentOptions& o) { return run_figure1(o); }},
        {"fig2", [](const ExperimentOptions& o) { return run_figure2(o); }},
        {"fig3", [](const ExperimentOptions& o) { return run_figure3(o); }},
        {"claims", [](const ExperimentOptions& o) { return run_claims_table(o); }},
        {"ptd", [](const ExperimentOptions& o) { return run_ptd_demo(o); }},
        {"randomsums", [](const ExperimentOptions& o) { return run_randomsum_demo(o); }},
    };
    return r;
}

void add_common_options(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--m", cfg.opt.m, "Monte Carlo replicates per estimate")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();
    cmd->add_option("--seed", cfg.opt.seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", cfg.opt.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", cfg.format, "csv or csv+svg")
        ->check(CLI::IsMember({"csv", "csv+svg"}))
        ->capture_default_str();
}

int run_selected(const std::vector<std::string>& selected, const CliConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    std::vector<ExperimentResult> results;
    for (const std::string& name : selected) {
        const auto it = std::find_if(runners().begin(), runners().end(),
                                     [&](const auto& r) { return r.first == name; });
        std::fprintf(stderr, "running %s (m=%zu, seed=%llu, simd=%s)...\n", name.c_str(),
                     cfg.opt.m, static_cast<unsigned long long>(cfg.opt.seed),
                     kern::isa_name(kern::active_isa()));
        ExperimentResult result = it->second(cfg.opt);
        std::fprintf(stderr, "  done in %.1fs\n", result.runtime_seconds);

        write_text_file(fs::path(cfg.out_dir) / (result.experiment_id + ".csv"), to_csv(result));
        if (cfg.format == "csv+svg") {
            const std::string svg = to_svg(result);
            if (!svg.empty())
                write_text_file(fs::path(cfg.out_dir) / (result.experiment_id + ".svg"), svg);
        }
        results.push_back(std::move(result));
    }

    write_text_file(fs::path(cfg.out_dir) / "summary.json",
                    summary_json(std::span<const ExperimentResult>(results)));

    bool all = true;
    for (const ExperimentResult& r : results) {
        for (const CheckRow& c : r.checks) {
            std::printf("%s %s.%s observed=%.9g window=[%.9g, %.9g]\n",
                        c.pass ? "PASS" : "FAIL", r.experiment_id.c_str(), c.name.c_str(),
                        c.observed, c.lo, c.hi);
            all = all && c.pass;
        }
    }
    std::printf("%s\n", all ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-sigma outlier probability laboratory"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::vector<std::string> selected;

    for (const auto& [name, runner] : runners()) {
        CLI::App* cmd = app.add_subcommand(name, "run the " + name + " experiment");
        add_common_options(cmd, cfg);
        if (name == "fig3") {
            cmd->add_option("--k", cfg.opt.fig3_k, "threshold multiplier for the surface")
                ->capture_default_str();
            cmd->add_option("--grid", cfg.opt.fig3_grid, "cells per surface axis")
                ->check(CLI::Range(std::size_t{2}, std::size_t{200}))
                ->capture_default_str();
        }
        cmd->callback([&selected, name = name] { selected.push_back(name); });
    }
    CLI::App* all_cmd = app.add_subcommand("all", "run every experiment");
    add_common_options(all_cmd, cfg);
    all_cmd->callback([&selected] {
        for (const auto& [name, runner] : runners()) selected.push_back(name);
    });

    CLI11_PARSE(app, argc, argv);

    try {
        return run_selected(selected, cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
