#pragma once

#include "eprgates/metrics.hpp"
#include "eprgates/oracle.hpp"
#include "eprgates/table.hpp"

#include <optional>
#include <string>

namespace eprgates {

enum class ExperimentKind { Fig2, Fig3, Fig4, Fig5, Cascade, Angles, Verify };
enum class InputKind { Vacuum, Coherent, Modulated };

/// Fully resolved experiment parameters. Every field is echoed into the
/// output metadata block, so result files are self-describing and rerunning
/// a configuration reproduces them byte for byte.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Fig3;
    double resource_db = -4.0;          // EPR resource squeezing (<= 0)
    double cluster_resource_db = -4.0;  // cluster comparison resource (<= 0)
    double sweep_min_db = -14.0;
    double sweep_max_db = 0.0;
    int sweep_steps = 101;
    InputKind input_kind = InputKind::Vacuum;
    double modulation_x_db = 0.0;
    double modulation_p_db = 0.0;
    double mean_x = 0.0;  // displacement for the coherent/modulated inputs
    double mean_p = 0.0;
    std::uint64_t seed = 42;
    std::int64_t samples = 1000000;
    std::string output_path;
    double fault_gain = 1.0;             // verify only; 1 = calibrated
    std::optional<double> theta1_deg;    // cascade only: single-angle run
};

// Paper-figure defaults: fig2 sweeps amplitude targets 0..+12 dB at -5.3 dB
// resource; fig3/fig4 sweep phase targets 0..-14 dB at -4.0 dB; fig5 scans
// the LO over 181 points; cascade sweeps theta1 over 5..85 degrees.
ExperimentConfig default_config(ExperimentKind kind);

// Squeezing parameter r with e^{-2r} = 10^{s_db/10}.
double squeeze_parameter_from_db(double s_db);

GaussianState make_input_state(const ExperimentConfig& cfg);

ResultTable run_fig2(const ExperimentConfig& cfg);
ResultTable run_fig3(const ExperimentConfig& cfg);
ResultTable run_fig4(const ExperimentConfig& cfg);
ResultTable run_fig5(const ExperimentConfig& cfg);
ResultTable run_cascade(const ExperimentConfig& cfg);
ResultTable run_angles(const ExperimentConfig& cfg);
ResultTable run_verify(const ExperimentConfig& cfg);

ResultTable run_experiment(const ExperimentConfig& cfg);

// True when a verify table reports every grid point as passing.
bool verify_table_passed(const ResultTable& table);

}  // namespace eprgates
