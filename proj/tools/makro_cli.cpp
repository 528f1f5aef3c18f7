#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "makro/analysis.hpp"
#include "makro/runner.hpp"

namespace fs = std::filesystem;
using namespace makro;

namespace {

std::string panel_path(const std::string& outdir, int i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "panel_%03d.csv", i);
    return (fs::path(outdir) / buf).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time agent-based simulator of the fractional-reserve "
                 "monetary system"};

    std::string config_path;
    std::string outdir = "out";
    std::string experiment = "baseline";
    bool report_only = false;
    bool dump_config = false;
    bool check_invariants = false;
    SimConfig cfg;

    app.add_option("-c,--config", config_path, "config file (key = value sections)");
    app.add_option("-o,--outdir", outdir, "output directory");
    app.add_option("-s,--seed", cfg.run.seed, "base RNG seed");
    app.add_option("-r,--replications", cfg.run.replications, "number of replications");
    app.add_option("-t,--horizon", cfg.run.horizon, "periods to simulate");
    app.add_option("-e,--experiment", experiment,
                   "baseline | sf13 | interbank-shutdown");
    app.add_flag("--parallel", cfg.run.parallel, "run replications in parallel");
    app.add_flag("--report-only", report_only,
                 "recompute the report from existing panel CSVs");
    app.add_flag("--check-invariants", check_invariants,
                 "audit the ledger after every event (slow)");
    app.add_flag("--dump-config", dump_config, "print the effective config and exit");
    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        try {
            SimConfig loaded = SimConfig::load(config_path);
            // command-line flags win over the file
            if (app.count("--replications")) loaded.run.replications = cfg.run.replications;
            if (app.count("--horizon")) loaded.run.horizon = cfg.run.horizon;
            if (app.count("--seed")) loaded.run.seed = cfg.run.seed;
            loaded.run.parallel = cfg.run.parallel || loaded.run.parallel;
            cfg = loaded;
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }

    if (experiment == "sf13") {
        cfg.experiment.sf13 = true;
        cfg.policy.fixed_key_rate = 0.01;
        if (!app.count("--horizon")) cfg.run.horizon = 150.0;
        cfg.run.warmup = 0;
    } else if (experiment == "interbank-shutdown") {
        cfg.experiment.interbank_shutdown = true;
    } else if (experiment != "baseline") {
        std::cerr << "unknown experiment: " << experiment << "\n";
        return 2;
    }

    for (const auto& wmsg : cfg.validate()) {
        std::cerr << "warning: " << wmsg << "\n";
    }
    if (dump_config) {
        std::cout << cfg.serialize();
        return 0;
    }

    fs::create_directories(outdir);

    std::vector<TimeSeriesPanel> panels;
    if (report_only) {
        for (int i = 0; i < cfg.run.replications; ++i) {
            const std::string path = panel_path(outdir, i);
            if (!fs::exists(path)) break;
            panels.push_back(TimeSeriesPanel::read_csv(path, cfg.run.warmup));
        }
        if (panels.empty()) {
            std::cerr << "no panel CSVs found in " << outdir << "\n";
            return 1;
        }
    } else {
        runner::RunOptions opts;
        opts.check_invariants = check_invariants;
        const auto results = runner::run_replications(cfg, opts);
        int i = 0;
        for (const auto& r : results) {
            r.panel.write_csv(panel_path(outdir, i));
            std::fprintf(stderr,
                         "replication %d: %llu events, %.1f s%s%s\n", i,
                         static_cast<unsigned long long>(r.events), r.wall_seconds,
                         r.stalled ? " [STALLED]" : "",
                         r.invariant_violations > 0 ? " [INVARIANT VIOLATIONS]" : "");
            if (check_invariants) {
                std::fprintf(stderr, "  worst ledger gap %.3e (%d violations)\n",
                             r.worst_invariant_gap, r.invariant_violations);
            }
            panels.push_back(r.panel);
            ++i;
        }
    }

    std::string report;
    if (cfg.experiment.sf13) {
        const auto rep = analysis::sf13_report(panels, cfg.experiment.sf13_start,
                                               cfg.experiment.sf13_end,
                                               std::max(0.0, cfg.policy.fixed_key_rate -
                                                                 cfg.monetary.corridor));
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "interbank rate: %.5f inside vs %.5f outside (floor %.5f)\n"
                      "interbank volume: %.3f inside vs %.3f outside (p %.4f)\n"
                      "rate volatility: %.3e inside vs %.3e outside (p %.4f)\n",
                      rep.rate_inside, rep.rate_outside, rep.floor_rate,
                      rep.volume_inside, rep.volume_outside, rep.volume_pvalue,
                      rep.volatility_inside, rep.volatility_outside,
                      rep.volatility_pvalue);
        report = buf;
    } else {
        report = analysis::stylized_facts_report(analysis::stylized_facts(panels));
    }
    std::cout << report;
    std::ofstream((fs::path(outdir) / "report.txt").string()) << report;
    return 0;
}
