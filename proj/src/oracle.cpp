#include "eprgates/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eprgates {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZThreshold = 4.0;

// Scalar 2x2 Cholesky of the input covariance so trajectories of arbitrary
// single-mode inputs can be drawn without the matrix engine.
struct InputSampler {
    double mean_x, mean_p;
    double l00, l10, l11;

    explicit InputSampler(const GaussianState& input)
        : mean_x(input.mean[0]), mean_p(input.mean[1]) {
        const double vxx = input.cov(0, 0);
        const double vxp = input.cov(0, 1);
        const double vpp = input.cov(1, 1);
        l00 = std::sqrt(vxx);
        l10 = vxp / l00;
        const double rem = vpp - l10 * l10;
        l11 = std::sqrt(rem > 0.0 ? rem : 0.0);
    }

    std::pair<double, double> draw(NormalSampler& rng) const {
        const double z1 = rng.next();
        const double z2 = rng.next();
        return {mean_x + l00 * z1, mean_p + l10 * z1 + l11 * z2};
    }
};

double sample_covariance(const std::vector<std::array<double, 2>>& s,
                         double mx, double mp, int i, int j) {
    double acc = 0.0;
    const double mi = i == 0 ? mx : mp;
    const double mj = j == 0 ? mx : mp;
    for (const auto& v : s) acc += (v[i] - mi) * (v[j] - mj);
    return acc / (static_cast<double>(s.size()) - 1.0);
}

}  // namespace

double NormalSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - (engine_() >> 11) * 0x1.0p-53;
    const double u2 = (engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    cached_ = radius * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return radius * std::cos(kTwoPi * u2);
}

std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

TrajectoryBatch sample_gate_trajectories(const GateConfig& config,
                                         const GaussianState& input,
                                         std::int64_t n, std::uint64_t seed,
                                         double gain_scale) {
    if (n < 1) throw std::invalid_argument("sample_gate_trajectories: n must be >= 1");
    if (input.n_modes != 1)
        throw std::invalid_argument("sample_gate_trajectories: input must be single-mode");
    if (!std::isfinite(gain_scale) || gain_scale <= 0.0)
        throw std::invalid_argument("sample_gate_trajectories: invalid gain scale");

    const bool fourier = config.kind == GateKind::Fourier;
    const double theta1 = fourier ? 0.0 : config.theta1;
    const double theta2 = fourier ? -std::numbers::pi / 2.0 : -theta1;
    if (!fourier && (!std::isfinite(theta1) || theta1 <= 0.0 || theta1 >= std::numbers::pi / 2.0))
        throw std::invalid_argument("sample_gate_trajectories: gate angle out of range");
    const double r = config.resource.r_E;
    if (!(r >= 0.0)) throw std::invalid_argument("sample_gate_trajectories: invalid resource");

    const double c1 = std::cos(theta1), s1 = std::sin(theta1);
    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    // Published feedforward gain factors, evaluated directly.
    double g00, g01, g10, g11;
    switch (config.kind) {
        case GateKind::Squeeze:
            g00 = 1.0 / (std::sqrt(2.0) * s1);
            g01 = g00;
            g10 = 1.0 / (std::sqrt(2.0) * c1);
            g11 = -g10;
            break;
        case GateKind::Fourier:
            g00 = 0.0;
            g01 = std::sqrt(2.0);
            g10 = std::sqrt(2.0);
            g11 = 0.0;
            break;
        case GateKind::CascadeFourierSqueeze:
            g00 = -1.0 / (std::sqrt(2.0) * c1);
            g01 = -g00;
            g10 = 1.0 / (std::sqrt(2.0) * s1);
            g11 = g10;
            break;
        default:
            throw std::invalid_argument("sample_gate_trajectories: unknown gate kind");
    }
    g00 *= gain_scale;
    g01 *= gain_scale;
    g10 *= gain_scale;
    g11 *= gain_scale;

    // Squeezed-quadrature standard deviations of the two NOPA-style ancilla
    // modes (A squeezed in x, B squeezed in p).
    const double sd_narrow = 0.5 * std::exp(-r);
    const double sd_wide = 0.5 * std::exp(r);

    const InputSampler input_sampler(input);
    NormalSampler rng(seed);

    TrajectoryBatch batch{n, seed, {}};
    batch.samples.resize(static_cast<std::size_t>(n));
    for (auto& out : batch.samples) {
        const auto [x_in, p_in] = input_sampler.draw(rng);
        const double xa = sd_narrow * rng.next();
        const double pa = sd_wide * rng.next();
        const double xb = sd_wide * rng.next();
        const double pb = sd_narrow * rng.next();
        const double x1 = (xa + xb) * inv_sqrt2;
        const double p1 = (pa + pb) * inv_sqrt2;
        const double x2 = (xa - xb) * inv_sqrt2;
        const double p2 = (pa - pb) * inv_sqrt2;

        double d1, d2;
        if (config.kind == GateKind::CascadeFourierSqueeze) {
            // Zero coupling phase.
            d1 = (c1 * (x_in - x1) + s1 * (p_in - p1)) * inv_sqrt2;
            d2 = (c2 * (x_in + x1) + s2 * (p_in + p1)) * inv_sqrt2;
        } else {
            // pi/2 coupling phase.
            d1 = (c1 * (x_in - p1) + s1 * (p_in + x1)) * inv_sqrt2;
            d2 = (c2 * (x_in + p1) + s2 * (p_in - x1)) * inv_sqrt2;
        }
        out[0] = x2 + g00 * d1 + g01 * d2;
        out[1] = p2 + g10 * d1 + g11 * d2;
    }
    return batch;
}

OracleVerdict verify_against_analytic(const TrajectoryBatch& batch,
                                      const GateReport& report) {
    const std::int64_t n = batch.n_samples;
    if (n < 100 || static_cast<std::int64_t>(batch.samples.size()) != n)
        throw std::invalid_argument("verify_against_analytic: need at least 100 samples");

    double sx = 0.0, sp = 0.0;
    for (const auto& v : batch.samples) {
        sx += v[0];
        sp += v[1];
    }
    const double mx = sx / static_cast<double>(n);
    const double mp = sp / static_cast<double>(n);

    OracleVerdict verdict;
    verdict.estimated_mean << mx, mp;
    verdict.estimated_cov << sample_covariance(batch.samples, mx, mp, 0, 0),
        sample_covariance(batch.samples, mx, mp, 0, 1),
        sample_covariance(batch.samples, mx, mp, 0, 1),
        sample_covariance(batch.samples, mx, mp, 1, 1);
    verdict.analytic_mean = report.output.mean.head<2>();
    verdict.analytic_cov = report.output.cov.block<2, 2>(0, 0);

    const double vxx = verdict.analytic_cov(0, 0);
    const double vpp = verdict.analytic_cov(1, 1);
    const double vxp = verdict.analytic_cov(0, 1);
    const double nd = static_cast<double>(n);
    // Gaussian asymptotic standard errors: Var(mean) = v/n,
    // Var(s^2) = 2 v^2/(n-1), Var(s_xy) = (vxx vpp + vxp^2)/(n-1).
    const double se_mx = std::sqrt(vxx / nd);
    const double se_mp = std::sqrt(vpp / nd);
    const double se_vx = std::sqrt(2.0 * vxx * vxx / (nd - 1.0));
    const double se_vp = std::sqrt(2.0 * vpp * vpp / (nd - 1.0));
    const double se_cxp = std::sqrt((vxx * vpp + vxp * vxp) / (nd - 1.0));

    verdict.z_scores = {
        (mx - verdict.analytic_mean[0]) / se_mx,
        (mp - verdict.analytic_mean[1]) / se_mp,
        (verdict.estimated_cov(0, 0) - vxx) / se_vx,
        (verdict.estimated_cov(1, 1) - vpp) / se_vp,
        (verdict.estimated_cov(0, 1) - vxp) / se_cxp,
    };
    verdict.pass = true;
    for (double z : verdict.z_scores)
        if (!(std::abs(z) < kZThreshold)) verdict.pass = false;
    return verdict;
}

OracleVerdict verify_cluster_noise(const ClusterNoiseModel& model, double a_db,
                                   std::int64_t n, std::uint64_t seed) {
    if (n < 100) throw std::invalid_argument("verify_cluster_noise: need at least 100 samples");
    const auto [var_x, var_p] = cluster_excess_variance(model, a_db);
    const double v = std::pow(10.0, a_db / 10.0);
    const double er = std::exp(-model.r_c);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double sqrt5 = std::sqrt(5.0);

    NormalSampler rng(seed);
    double sum_x = 0.0, sum_p = 0.0, sum_xx = 0.0, sum_pp = 0.0;
    std::vector<std::array<double, 2>> draws(static_cast<std::size_t>(n));
    for (auto& d : draws) {
        // Four independent vacuum phase quadratures, variance 1/4 each.
        const double p1 = 0.5 * rng.next();
        const double p2 = 0.5 * rng.next();
        const double p3 = 0.5 * rng.next();
        const double p4 = 0.5 * rng.next();
        double dx, dp;
        if (v <= 1.5) {
            dx = er * (inv_sqrt2 * p1 - std::sqrt(2.5) * p2);
            dp = er * (-std::sqrt(2.5) * p3 + inv_sqrt2 * p4);
        } else {
            const double root = std::sqrt(2.0 * v - 3.0);
            dx = er * (3.0 * p1 / v - 2.0 * sqrt5 * p2 + root * (sqrt5 * p3 + p4) / v) /
                 (2.0 * std::sqrt(2.0));
            dp = er * (root * p1 - sqrt5 * p3 + p4) * inv_sqrt2;
        }
        d = {dx, dp};
        sum_x += dx;
        sum_p += dp;
    }
    const double nd = static_cast<double>(n);
    const double mx = sum_x / nd;
    const double mp = sum_p / nd;
    for (const auto& d : draws) {
        sum_xx += (d[0] - mx) * (d[0] - mx);
        sum_pp += (d[1] - mp) * (d[1] - mp);
    }
    const double est_vx = sum_xx / (nd - 1.0);
    const double est_vp = sum_pp / (nd - 1.0);

    OracleVerdict verdict;
    verdict.estimated_mean << mx, mp;
    verdict.estimated_cov << est_vx, 0.0, 0.0, est_vp;
    verdict.analytic_mean.setZero();
    verdict.analytic_cov << var_x, 0.0, 0.0, var_p;
    verdict.z_scores = {
        (est_vx - var_x) / std::sqrt(2.0 * var_x * var_x / (nd - 1.0)),
        (est_vp - var_p) / std::sqrt(2.0 * var_p * var_p / (nd - 1.0)),
    };
    verdict.pass = std::abs(verdict.z_scores[0]) < kZThreshold &&
                   std::abs(verdict.z_scores[1]) < kZThreshold;
    return verdict;
}

}  // namespace eprgates
