#include "eprgates/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprgates {

double noise_power_db(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("noise_power_db: variance must be positive");
    return 10.0 * std::log10(variance / kVacuumVariance);
}

NoiseSpectrum lo_sweep(const GaussianState& state, int n_points) {
    if (state.n_modes != 1) throw std::invalid_argument("lo_sweep: state must be single-mode");
    if (n_points < 2) throw std::invalid_argument("lo_sweep: need at least 2 points");
    NoiseSpectrum spectrum;
    spectrum.points.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double phi = std::numbers::pi * i / (n_points - 1);
        const auto [mean, var] = quadrature_stats(state, mode_angle_observable(0, phi, 1));
        spectrum.points.emplace_back(phi, noise_power_db(var + mean * mean));
    }
    return spectrum;
}

Eigen::Matrix2d covariance_for_fidelity(const GaussianState& state) {
    if (state.n_modes != 1)
        throw std::invalid_argument("covariance_for_fidelity: state must be single-mode");
    return 4.0 * state.cov;
}

FidelityResult gaussian_fidelity(const GaussianState& state1,
                                 const GaussianState& state2) {
    if (state1.n_modes != 1 || state2.n_modes != 1)
        throw std::invalid_argument("gaussian_fidelity: states must be single-mode");
    const Eigen::Matrix2d a1 = covariance_for_fidelity(state1);
    const Eigen::Matrix2d a2 = covariance_for_fidelity(state2);
    const Eigen::Matrix2d sum = a1 + a2;
    const double delta = sum.determinant();
    if (std::abs(delta) < 1e-300)
        throw std::invalid_argument("gaussian_fidelity: A1 + A2 is singular");

    double sigma = (a1.determinant() - 1.0) * (a2.determinant() - 1.0);
    // Pure states sit exactly on det A = 1; rounding can push sigma to a tiny
    // negative value there.
    if (std::abs(sigma) < 1e-12) sigma = 0.0;
    if (sigma < 0.0 || delta + sigma < 0.0)
        throw std::invalid_argument("gaussian_fidelity: inputs are not valid states");

    // Means enter in the normalization matching A = 4 cov: beta = sqrt(2) *
    // (mu2 - mu1) reproduces the coherent-state overlap exp(-|alpha1-alpha2|^2).
    const Eigen::Vector2d beta = std::sqrt(2.0) * (state2.mean.head<2>() - state1.mean.head<2>());
    const double exponent = -beta.dot(sum.inverse() * beta);
    const double fidelity = 2.0 / (std::sqrt(delta + sigma) - std::sqrt(sigma)) * std::exp(exponent);
    return FidelityResult{fidelity, delta, sigma, beta};
}

FidelityResult fidelity_vs_ideal(const GateConfig& config, const GaussianState& input,
                                 FidelityBenchmark benchmark) {
    if (input.n_modes != 1)
        throw std::invalid_argument("fidelity_vs_ideal: input must be single-mode");
    const GateReport report = run_gate(config, input);
    Eigen::Matrix2d ideal_cov = report.transform * input.cov * report.transform.transpose();
    ideal_cov = 0.5 * (ideal_cov + ideal_cov.transpose().eval());
    const GaussianState ideal(report.transform * input.mean, ideal_cov);

    if (benchmark == FidelityBenchmark::Epr) return gaussian_fidelity(ideal, report.output);
    // Classical limit: the resource degenerates to two vacua (r_E = 0),
    // leaving 1/2 of excess variance on each quadrature.
    const GateConfig classical{config.kind, config.theta1, make_epr(0.0)};
    return gaussian_fidelity(ideal, run_gate(classical, input).output);
}

}  // namespace eprgates
