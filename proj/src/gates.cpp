#include "eprgates/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprgates {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_gate_angle(double theta1) {
    if (!std::isfinite(theta1) || theta1 <= 0.0 || theta1 >= kHalfPi)
        throw std::invalid_argument("gate angle must lie strictly inside (0, pi/2)");
}

// Mode layout inside run_gate: 0 = input, 1 = E1, 2 = E2. The two detectors
// read the two beamsplitter ports; the surviving mode is E2.
constexpr int kInputMode = 0;
constexpr int kE1Mode = 1;
constexpr int kSumPort = 0;   // (input + E1')/sqrt2 lands in the input slot
constexpr int kDiffPort = 1;  // (input - E1')/sqrt2 lands in the E1 slot
constexpr int kOutputMode = 2;

MeasurementPlan plan_for(const GateConfig& config) {
    switch (config.kind) {
        case GateKind::Squeeze:
            return build_squeeze_plan(config.theta1);
        case GateKind::Fourier:
            return build_fourier_plan();
        case GateKind::CascadeFourierSqueeze:
            return build_cascade_plan(config.theta1);
    }
    throw std::invalid_argument("run_gate: unknown gate kind");
}

}  // namespace

EprResource make_epr(double r_E) {
    if (!(r_E >= 0.0) || !std::isfinite(r_E))
        throw std::invalid_argument("make_epr: r_E must be finite and >= 0");
    // Two orthogonally squeezed vacua on a 50/50 beamsplitter: amplitude
    // anti-correlated, phase correlated.
    GaussianState pair = tensor(apply(single_mode_squeezer(-r_E), make_vacuum(1)),
                                apply(single_mode_squeezer(r_E), make_vacuum(1)));
    return EprResource{r_E, apply(beamsplitter_50_50(0, 1, 2), pair)};
}

double angle_for_squeezing_db(double a_db, SqueezeQuadrature quadrature) {
    if (!std::isfinite(a_db)) throw std::invalid_argument("angle_for_squeezing_db: non-finite dB");
    const double exponent = quadrature == SqueezeQuadrature::Phase ? a_db : -a_db;
    const double theta = std::atan(std::pow(10.0, exponent / 20.0));
    if (!(theta > 0.0) || !(theta < kHalfPi))
        throw std::invalid_argument("angle_for_squeezing_db: degenerate measurement angle");
    return theta;
}

MeasurementPlan build_squeeze_plan(double theta1) {
    check_gate_angle(theta1);
    const double s = std::sqrt(2.0) * std::sin(theta1);
    const double c = std::sqrt(2.0) * std::cos(theta1);
    Eigen::MatrixXd gain(2, 2);
    gain << 1.0 / s, 1.0 / s, 1.0 / c, -1.0 / c;
    return MeasurementPlan{{kSumPort, kDiffPort}, {theta1, -theta1}, kOutputMode, gain};
}

MeasurementPlan build_fourier_plan() {
    Eigen::MatrixXd gain(2, 2);
    gain << 0.0, std::sqrt(2.0), std::sqrt(2.0), 0.0;
    return MeasurementPlan{{kSumPort, kDiffPort}, {0.0, -kHalfPi}, kOutputMode, gain};
}

MeasurementPlan build_cascade_plan(double theta1) {
    check_gate_angle(theta1);
    // With zero coupling phase the first detector of the cascaded gate reads
    // the difference port.
    const double s = std::sqrt(2.0) * std::sin(theta1);
    const double c = std::sqrt(2.0) * std::cos(theta1);
    Eigen::MatrixXd gain(2, 2);
    gain << -1.0 / c, 1.0 / c, 1.0 / s, 1.0 / s;
    return MeasurementPlan{{kDiffPort, kSumPort}, {theta1, -theta1}, kOutputMode, gain};
}

Eigen::Matrix2d ideal_gate_transform(GateKind kind, double theta1) {
    Eigen::Matrix2d t;
    switch (kind) {
        case GateKind::Squeeze:
            check_gate_angle(theta1);
            t << 1.0 / std::tan(theta1), 0.0, 0.0, std::tan(theta1);
            return t;
        case GateKind::Fourier:
            t << 0.0, -1.0, 1.0, 0.0;
            return t;
        case GateKind::CascadeFourierSqueeze:
            check_gate_angle(theta1);
            t << 0.0, -std::tan(theta1), 1.0 / std::tan(theta1), 0.0;
            return t;
    }
    throw std::invalid_argument("ideal_gate_transform: unknown gate kind");
}

GateReport run_gate(const GateConfig& config, const GaussianState& input) {
    if (input.n_modes != 1) throw std::invalid_argument("run_gate: input must be single-mode");
    if (config.kind != GateKind::Fourier) check_gate_angle(config.theta1);

    const MeasurementPlan plan = plan_for(config);
    // Squeeze and Fourier couple the input to E1 with a pi/2 phase
    // difference; the cascaded gate couples with zero phase.
    const bool rotate_e1 = config.kind != GateKind::CascadeFourierSqueeze;
    SymplecticOp coupling = beamsplitter_50_50(kInputMode, kE1Mode, 3);
    if (rotate_e1)
        coupling = compose(coupling, embed_single_mode(phase_rotation(kHalfPi), kE1Mode, 3));

    const GaussianState joint = apply(coupling, tensor(input, config.resource.state));
    const GaussianState output = measure_and_feedforward(joint, plan);

    // Total linear map from the initial (input, E1, E2) quadratures to the
    // output pair; its blocks give the effective transform and the excess
    // covariance carried by the resource.
    const Eigen::MatrixXd total = feedforward_map(plan, 3) * coupling.matrix;
    const Eigen::Matrix2d transform = total.block<2, 2>(0, 0);
    const Eigen::MatrixXd resource_part = total.block<2, 4>(0, 2);
    Eigen::Matrix2d excess =
        resource_part * config.resource.state.cov * resource_part.transpose();
    excess = 0.5 * (excess + excess.transpose().eval());
    return GateReport{output, transform, excess};
}

std::pair<double, double> cluster_excess_variance(const ClusterNoiseModel& model,
                                                  double a_db) {
    if (!std::isfinite(a_db) || !std::isfinite(model.r_c) || model.r_c < 0.0)
        throw std::invalid_argument("cluster_excess_variance: invalid parameters");
    const double v = std::pow(10.0, a_db / 10.0);
    if (!(v > 0.0)) throw std::invalid_argument("cluster_excess_variance: V must be positive");
    const double k = std::exp(-2.0 * model.r_c);
    if (v <= 1.5) {
        // Squared coefficients (1/2 + 5/2) times vacuum variance 1/4.
        return {0.75 * k, 0.75 * k};
    }
    // Squared coefficient sums of the V > 3/2 branch, times 1/4.
    const double var_x = k * (20.0 + (12.0 * v - 9.0) / (v * v)) / 32.0;
    const double var_p = k * (2.0 * v + 3.0) / 8.0;
    return {var_x, var_p};
}

double excess_ratio_epr_vs_cluster(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("excess_ratio_epr_vs_cluster: r must be finite and >= 0");
    const double epr = std::exp(-2.0 * r) / 2.0;
    const double cluster = 0.75 * std::exp(-2.0 * r);
    return epr / cluster;
}

}  // namespace eprgates
