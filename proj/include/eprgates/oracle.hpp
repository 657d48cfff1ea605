#pragma once

#include "eprgates/gates.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace eprgates {

/// Reproducible batch of sampled gate outputs. Identical (seed, config, n)
/// yield bit-identical sample streams: the generator is mt19937_64 feeding a
/// Box-Muller transform, with a fixed draw order of six normals per
/// trajectory (input x/p, squeezed ancilla A x/p, squeezed ancilla B x/p).
struct TrajectoryBatch {
    std::int64_t n_samples;
    std::uint64_t seed;
    std::vector<std::array<double, 2>> samples;  // output (x, p) per trajectory
};

/// Comparison of sampled statistics against the analytic prediction.
/// z-scores are ordered (mean_x, mean_p, var_x, var_p, cov_xp); pass means
/// every |z| < 4.
struct OracleVerdict {
    Eigen::Vector2d estimated_mean;
    Eigen::Matrix2d estimated_cov;
    Eigen::Vector2d analytic_mean;
    Eigen::Matrix2d analytic_cov;
    std::vector<double> z_scores;
    bool pass;
};

// Deterministic standard-normal stream. mt19937_64 is fully specified by the
// standard and the Box-Muller transform is written out here, so streams do
// not depend on the library's distribution implementation.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
    double next();

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Samples n measurement-feedforward trajectories of the configured gate.
// Works sample-by-sample from the scalar homodyne-outcome expressions and
// the published gain factors; shares no covariance propagation with the
// matrix engine. gain_scale != 1 deliberately mis-calibrates the feedforward
// (negative-control testing).
TrajectoryBatch sample_gate_trajectories(const GateConfig& config,
                                         const GaussianState& input,
                                         std::int64_t n, std::uint64_t seed,
                                         double gain_scale = 1.0);

OracleVerdict verify_against_analytic(const TrajectoryBatch& batch,
                                      const GateReport& report);

// Samples the four vacuum modes of the cluster excess-noise expressions and
// checks both quadrature variances against cluster_excess_variance.
OracleVerdict verify_cluster_noise(const ClusterNoiseModel& model, double a_db,
                                   std::int64_t n, std::uint64_t seed);

// Documented per-stream seed derivation for batched runs (splitmix64 mix of
// base seed and stream index).
std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace eprgates
