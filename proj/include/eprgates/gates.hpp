#pragma once

#include "eprgates/gaussian.hpp"

namespace eprgates {

/// Two-mode entangled resource with correlation variances
/// <D^2(x1+x2)> = <D^2(p1-p2)> = e^{-2 r_E} / 2.
struct EprResource {
    double r_E;
    GaussianState state;  // modes (E1, E2)
};

enum class GateKind { Squeeze, Fourier, CascadeFourierSqueeze };

struct GateConfig {
    GateKind kind;
    double theta1;  // homodyne angle, (0, pi/2); ignored for Fourier
    EprResource resource;
};

/// Result of one gate run: the single-mode output state, the effective 2x2
/// matrix acting on the input mean, and the additive covariance contributed
/// by the finite resource squeezing. For every run
///   output.cov = transform * input.cov * transform^T + excess_cov.
struct GateReport {
    GaussianState output;
    Eigen::Matrix2d transform;
    Eigen::Matrix2d excess_cov;
};

/// Excess-noise model of the four-mode-cluster construction of the same
/// gates, parameterized by the cluster resource squeezing r_c.
struct ClusterNoiseModel {
    double r_c;
};

enum class SqueezeQuadrature { Phase, Amplitude };

EprResource make_epr(double r_E);

// Homodyne angle realizing a squeezing gate of `a_db` dB (a_db < 0 quoted as
// squeezing) on the chosen quadrature: tan(theta1) = 10^{a/20} for phase,
// cot(theta1) = 10^{a/20} for amplitude. Degenerate angles {0, pi/2} rejected.
double angle_for_squeezing_db(double a_db, SqueezeQuadrature quadrature);

MeasurementPlan build_squeeze_plan(double theta1);
MeasurementPlan build_fourier_plan();
MeasurementPlan build_cascade_plan(double theta1);

GateReport run_gate(const GateConfig& config, const GaussianState& input);

// Closed-form transform of each gate kind (diag(cot, tan), F, or F*S).
Eigen::Matrix2d ideal_gate_transform(GateKind kind, double theta1);

// Output excess-noise variances (var_x, var_p) of the four-mode-cluster gate
// at target squeezing a dB, from the two regimes of V = 10^{a/10}.
std::pair<double, double> cluster_excess_variance(const ClusterNoiseModel& model,
                                                  double a_db);

// EPR excess variance over cluster excess variance in the phase-squeezing
// regime; equals 2/3 for every resource squeezing r.
double excess_ratio_epr_vs_cluster(double r);

}  // namespace eprgates
