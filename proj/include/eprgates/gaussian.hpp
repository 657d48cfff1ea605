#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace eprgates {

// Quadrature conventions used throughout:
//   x = (a + a^dag)/2,  p = (a - a^dag)/2i, vacuum variance 1/4 per quadrature.
//   Mode ordering is interleaved: (x1, p1, x2, p2, ...).
inline constexpr double kVacuumVariance = 0.25;

/// Multimode Gaussian state: mean quadrature vector and symmetric covariance
/// matrix. Immutable value object; all operations return new states.
struct GaussianState {
    int n_modes;
    Eigen::VectorXd mean;  // length 2*n_modes
    Eigen::MatrixXd cov;   // 2N x 2N, symmetric, vacuum = I/4

    // Validates dimensions, finiteness, symmetry and the uncertainty relation
    // (symplectic eigenvalues >= 1/4 up to a scale-aware tolerance).
    GaussianState(Eigen::VectorXd mean_in, Eigen::MatrixXd cov_in);
};

/// Linear quadrature transformation S with S * Omega * S^T = Omega.
struct SymplecticOp {
    Eigen::MatrixXd matrix;
    std::string label;

    SymplecticOp(Eigen::MatrixXd matrix_in, std::string label_in);
};

/// Coefficient vector c of a generalized quadrature c . (x1, p1, ...),
/// e.g. cos(theta) x + sin(theta) p on a single mode.
struct QuadratureObservable {
    Eigen::VectorXd coefficients;

    explicit QuadratureObservable(Eigen::VectorXd coefficients_in);
};

/// Homodyne-plus-feedforward description: measured modes and angles, the
/// surviving mode, and the 2xM gain mapping outcomes to (x, p) displacements.
struct MeasurementPlan {
    std::vector<int> measured_modes;
    std::vector<double> angles;
    int surviving_mode;
    Eigen::MatrixXd gain;  // 2 x M

    void validate(int n_modes) const;
};

// The symplectic form with 2x2 blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Symplectic eigenvalues of cov: moduli of the (pairwise imaginary)
// eigenvalues of Omega*cov. Vacuum gives 1/4; valid states are >= 1/4.
Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state);

GaussianState make_vacuum(int n_modes);
GaussianState make_coherent(double mean_x, double mean_p);

// Adds independent classical Gaussian noise to one mode (variances in
// absolute units, vacuum = 0.25). Models broadband modulation signals.
GaussianState add_classical_noise(const GaussianState& state, int mode,
                                  double var_x, double var_p);

// diag(e^r, e^-r): squeezes the phase quadrature for r > 0.
SymplecticOp single_mode_squeezer(double r);

// [[cos, -sin], [sin, cos]]; theta = pi/2 is the Fourier transformation F.
SymplecticOp phase_rotation(double theta);

// 50/50 coupler: modes (a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2) on both
// quadratures, identity elsewhere.
SymplecticOp beamsplitter_50_50(int mode_a, int mode_b, int n_modes);

// Embeds a single-mode op at `mode` of an n_modes register.
SymplecticOp embed_single_mode(const SymplecticOp& op, int mode, int n_modes);

SymplecticOp compose(const SymplecticOp& second, const SymplecticOp& first);

GaussianState apply(const SymplecticOp& op, const GaussianState& state);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

std::pair<double, double> quadrature_stats(const GaussianState& state,
                                           const QuadratureObservable& obs);

QuadratureObservable mode_angle_observable(int mode, double theta, int n_modes);

// Linear map L (2 x 2N) from pre-measurement quadratures to the fed-forward
// output (x_s, p_s) + G * (outcomes).
Eigen::MatrixXd feedforward_map(const MeasurementPlan& plan, int n_modes);

// Unconditional single-mode output of the measure-and-feedforward protocol:
// mean -> L mean, cov -> L cov L^T. No conditioning step is needed because
// the feedforward is a deterministic linear function of the outcomes.
GaussianState measure_and_feedforward(const GaussianState& state,
                                      const MeasurementPlan& plan);

}  // namespace eprgates
