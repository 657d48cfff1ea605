#include "eprgates/experiments.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using eprgates::ExperimentConfig;
using eprgates::ExperimentKind;
using eprgates::InputKind;

constexpr const char* kOutDirEnv = "EPRGATES_OUT_DIR";

std::string default_output_path(const char* name) {
    const char* dir = std::getenv(kOutDirEnv);
    if (dir == nullptr || *dir == '\0') return std::string(name) + ".csv";
    return (std::filesystem::path(dir) / (std::string(name) + ".csv")).string();
}

struct SweepFlag {
    double min = 0.0, max = 0.0;
    int steps = 0;
    bool set = false;
};

// Attaches the shared experiment flags to one subcommand and returns the
// resolved config when that subcommand runs.
void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, SweepFlag& sweep) {
    cmd->add_option("--resource-db", cfg.resource_db,
                    "EPR resource squeezing in dB (<= 0)");
    cmd->add_option("--cluster-resource-db", cfg.cluster_resource_db,
                    "cluster-model resource squeezing in dB (<= 0)");
    cmd->add_option_function<std::string>(
           "--sweep",
           [&sweep](const std::string& text) {
               double lo, hi;
               int steps;
               if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &steps) != 3)
                   throw CLI::ValidationError("--sweep expects min:max:steps");
               sweep = SweepFlag{lo, hi, steps, true};
           },
           "sweep range as min:max:steps (dB; degrees for cascade)");
    std::map<std::string, InputKind> input_names{{"vacuum", InputKind::Vacuum},
                                                 {"coherent", InputKind::Coherent},
                                                 {"modulated", InputKind::Modulated}};
    cmd->add_option("--input", cfg.input_kind, "input state kind")
        ->transform(CLI::CheckedTransformer(input_names, CLI::ignore_case));
    cmd->add_option("--mod-x-db", cfg.modulation_x_db, "amplitude modulation level (dB)");
    cmd->add_option("--mod-p-db", cfg.modulation_p_db, "phase modulation level (dB)");
    cmd->add_option("--mean-x", cfg.mean_x, "coherent displacement on x");
    cmd->add_option("--mean-p", cfg.mean_p, "coherent displacement on p");
    cmd->add_option("--seed", cfg.seed, "random seed (verify)");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo samples per grid point (verify)");
    cmd->add_option("--out", cfg.output_path, "output csv path (default $EPRGATES_OUT_DIR)");
}

int write_table(const eprgates::ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 1;
    }
    eprgates::write_csv(table, out);
    std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Measurement-based continuous-variable gate simulator: squeezing, Fourier and\n"
        "cascaded squeeze-Fourier operations on EPR entanglement, with analytic\n"
        "covariance propagation, a Monte Carlo cross-check and noise/fidelity metrics."};
    app.require_subcommand(1);

    struct Sub {
        ExperimentKind kind;
        CLI::App* cmd;
        ExperimentConfig cfg;
        SweepFlag sweep;
        double theta1_deg = 0.0;
        bool theta1_set = false;
        double fault_gain = 1.0;
    };
    std::vector<std::unique_ptr<Sub>> subs;
    const std::pair<ExperimentKind, std::pair<const char*, const char*>> defs[] = {
        {ExperimentKind::Fig2,
         {"fig2", "noise power vs amplitude-squeezing target, EPR vs cluster resource"}},
        {ExperimentKind::Fig3,
         {"fig3", "squeezing-gate output noise for vacuum and phase-modulated inputs"}},
        {ExperimentKind::Fig4, {"fig4", "gate fidelity vs phase-squeezing target"}},
        {ExperimentKind::Fig5, {"fig5", "Fourier gate on a modulated input, LO phase sweep"}},
        {ExperimentKind::Cascade, {"cascade", "cascaded squeeze-Fourier gate over theta1"}},
        {ExperimentKind::Angles, {"angles", "homodyne angle table for squeezing targets"}},
        {ExperimentKind::Verify, {"verify", "Monte Carlo verification of the analytic engine"}},
    };
    for (const auto& [kind, names] : defs) {
        auto sub = std::make_unique<Sub>();
        sub->kind = kind;
        sub->cfg = eprgates::default_config(kind);
        sub->cmd = app.add_subcommand(names.first, names.second);
        add_common_flags(sub->cmd, sub->cfg, sub->sweep);
        if (kind == ExperimentKind::Cascade)
            sub->cmd->add_option("--theta1-deg", sub->theta1_deg,
                                 "single cascade angle instead of a sweep")
                ->each([s = sub.get()](const std::string&) { s->theta1_set = true; });
        if (kind == ExperimentKind::Verify)
            sub->cmd->add_option("--fault-gain", sub->fault_gain,
                                 "scale the sampled feedforward gain (negative control)");
        subs.push_back(std::move(sub));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    for (auto& sub : subs) {
        if (!sub->cmd->parsed()) continue;
        ExperimentConfig cfg = sub->cfg;
        if (sub->sweep.set) {
            cfg.sweep_min_db = sub->sweep.min;
            cfg.sweep_max_db = sub->sweep.max;
            cfg.sweep_steps = sub->sweep.steps;
        }
        if (sub->theta1_set) cfg.theta1_deg = sub->theta1_deg;
        cfg.fault_gain = sub->fault_gain;
        if (cfg.output_path.empty())
            cfg.output_path = default_output_path(sub->cmd->get_name().c_str());

        try {
            const eprgates::ResultTable table = eprgates::run_experiment(cfg);
            const int rc = write_table(table, cfg.output_path);
            if (rc != 0) return rc;
            if (cfg.experiment == ExperimentKind::Verify &&
                !eprgates::verify_table_passed(table)) {
                std::cerr << "verification FAILED: at least one grid point exceeded 4 sigma\n";
                return 2;
            }
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}
