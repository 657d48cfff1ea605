#pragma once

#include "eprgates/gates.hpp"

#include <vector>

namespace eprgates {

/// Noise powers in dB relative to the shot-noise level B0 = 1/4.
struct NoiseSpectrum {
    std::vector<std::pair<double, double>> points;  // (angle rad, power dB)
    double reference = kVacuumVariance;
};

struct FidelityResult {
    double fidelity;
    double delta;           // det(A1 + A2)
    double sigma;           // (det A1 - 1)(det A2 - 1)
    Eigen::Vector2d beta;   // normalized mean difference entering the exponent
};

enum class FidelityBenchmark { Epr, Classical };

// 10 log10(B / B0) with B0 = 1/4.
double noise_power_db(double variance);

// Noise power of the generalized quadrature cos(phi) x + sin(phi) p on a
// uniform phi grid over [0, pi]; uses the total second moment
// (variance + squared mean projection).
NoiseSpectrum lo_sweep(const GaussianState& state, int n_points);

// Covariance in the fidelity normalization A = 4 cov (vacuum -> identity).
Eigen::Matrix2d covariance_for_fidelity(const GaussianState& state);

// Gaussian state overlap F = 2 / (sqrt(delta + sigma) - sqrt(sigma))
// * exp(-beta^T (A1 + A2)^{-1} beta) for single-mode states.
FidelityResult gaussian_fidelity(const GaussianState& state1,
                                 const GaussianState& state2);

// Fidelity of the simulated gate output against the zero-excess ideal output.
// The classical benchmark replaces the entangled resource by two vacua.
FidelityResult fidelity_vs_ideal(const GateConfig& config, const GaussianState& input,
                                 FidelityBenchmark benchmark);

}  // namespace eprgates
