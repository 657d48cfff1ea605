#include "eprgates/gaussian.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace eprgates {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

double inf_norm(const Eigen::MatrixXd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Tolerances are floored at the spec values for O(1) states and scale with
// the matrix magnitude so that strongly squeezed states (entries ~ e^{2r})
// are not rejected for plain double-precision rounding.
double symmetry_tol(const Eigen::MatrixXd& cov) {
    return std::max(1e-12, inf_norm(cov) * 4e-16);
}

double symplectic_tol(const Eigen::MatrixXd& s) {
    const double n = inf_norm(s);
    return std::max(1e-10, n * n * 1e-14);
}

// Williamson spectrum of a positive-definite covariance: with cov = L L^T,
// Omega*cov is similar to the skew-symmetric L^T Omega L, whose singular
// values are the symplectic eigenvalues (each twice). The SVD route stays
// accurate where a plain eigensolver on the non-normal Omega*cov does not.
Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& cov) {
    const int n_modes = static_cast<int>(cov.rows()) / 2;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("GaussianState: covariance is not positive definite");
    const Eigen::MatrixXd l = llt.matrixL();
    const Eigen::MatrixXd skew = l.transpose() * symplectic_form(n_modes) * l;
    Eigen::VectorXd nu =
        Eigen::JacobiSVD<Eigen::MatrixXd>(skew).singularValues();
    std::sort(nu.data(), nu.data() + nu.size());
    return nu;
}

}  // namespace

GaussianState::GaussianState(Eigen::VectorXd mean_in, Eigen::MatrixXd cov_in)
    : n_modes(static_cast<int>(mean_in.size()) / 2),
      mean(std::move(mean_in)),
      cov(std::move(cov_in)) {
    if (n_modes < 1 || mean.size() != 2 * n_modes)
        throw std::invalid_argument("GaussianState: mean length must be 2*n_modes >= 2");
    if (cov.rows() != mean.size() || cov.cols() != mean.size())
        throw std::invalid_argument("GaussianState: cov must be 2N x 2N");
    if (!mean.allFinite() || !all_finite(cov))
        throw std::invalid_argument("GaussianState: non-finite entries");
    if (inf_norm(cov - cov.transpose()) > symmetry_tol(cov))
        throw std::invalid_argument("GaussianState: covariance not symmetric");
    cov = 0.5 * (cov + cov.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
    const double lambda_min = es.eigenvalues().minCoeff();
    if (!(lambda_min > 0.0))
        throw std::invalid_argument("GaussianState: uncertainty relation violated");
    // Strong squeezing makes cov ill-conditioned and already perturbs its
    // small eigenvalues by ~ eps*kappa at construction time, so the
    // uncertainty check cannot be sharper than that.
    const double kappa = es.eigenvalues().maxCoeff() / lambda_min;
    const double tol = std::max(1e-10, 16.0 * kVacuumVariance * kappa * 2.22e-16);
    const Eigen::VectorXd nu = symplectic_spectrum(cov);
    if (nu[0] < kVacuumVariance - tol)
        throw std::invalid_argument("GaussianState: uncertainty relation violated");
}

SymplecticOp::SymplecticOp(Eigen::MatrixXd matrix_in, std::string label_in)
    : matrix(std::move(matrix_in)), label(std::move(label_in)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 2 || matrix.rows() % 2 != 0)
        throw std::invalid_argument("SymplecticOp: matrix must be 2N x 2N");
    if (!all_finite(matrix))
        throw std::invalid_argument("SymplecticOp: non-finite entries");
    const int n_modes = static_cast<int>(matrix.rows()) / 2;
    const Eigen::MatrixXd omega = symplectic_form(n_modes);
    if (inf_norm(matrix * omega * matrix.transpose() - omega) > symplectic_tol(matrix))
        throw std::invalid_argument("SymplecticOp: matrix is not symplectic");
}

QuadratureObservable::QuadratureObservable(Eigen::VectorXd coefficients_in)
    : coefficients(std::move(coefficients_in)) {
    if (coefficients.size() < 2 || coefficients.size() % 2 != 0)
        throw std::invalid_argument("QuadratureObservable: need 2N coefficients");
    if (!coefficients.allFinite() || coefficients.isZero(0.0))
        throw std::invalid_argument("QuadratureObservable: coefficients must be finite and nonzero");
}

void MeasurementPlan::validate(int n_modes) const {
    const int m = static_cast<int>(measured_modes.size());
    if (m == 0) throw std::invalid_argument("MeasurementPlan: no measured modes");
    if (static_cast<int>(angles.size()) != m)
        throw std::invalid_argument("MeasurementPlan: angles/modes size mismatch");
    if (gain.rows() != 2 || gain.cols() != m)
        throw std::invalid_argument("MeasurementPlan: gain must be 2 x M");
    if (!gain.allFinite())
        throw std::invalid_argument("MeasurementPlan: gain entries must be finite");
    if (surviving_mode < 0 || surviving_mode >= n_modes)
        throw std::invalid_argument("MeasurementPlan: surviving mode out of range");
    for (int i = 0; i < m; ++i) {
        if (measured_modes[i] < 0 || measured_modes[i] >= n_modes)
            throw std::invalid_argument("MeasurementPlan: measured mode out of range");
        if (measured_modes[i] == surviving_mode)
            throw std::invalid_argument("MeasurementPlan: cannot measure the surviving mode");
        for (int j = i + 1; j < m; ++j)
            if (measured_modes[i] == measured_modes[j])
                throw std::invalid_argument("MeasurementPlan: duplicate measured mode");
        if (!std::isfinite(angles[i]))
            throw std::invalid_argument("MeasurementPlan: non-finite angle");
    }
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

Eigen::VectorXd symplectic_eigenvalues(const GaussianState& state) {
    Eigen::VectorXd nu = symplectic_spectrum(state.cov);
    // +/- i nu pairs: keep one representative per mode.
    Eigen::VectorXd out(state.n_modes);
    for (int k = 0; k < state.n_modes; ++k) out[k] = 0.5 * (nu[2 * k] + nu[2 * k + 1]);
    return out;
}

GaussianState make_vacuum(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("make_vacuum: n_modes must be >= 1");
    return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                         kVacuumVariance * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState make_coherent(double mean_x, double mean_p) {
    if (!std::isfinite(mean_x) || !std::isfinite(mean_p))
        throw std::invalid_argument("make_coherent: non-finite mean");
    Eigen::Vector2d mu(mean_x, mean_p);
    return GaussianState(mu, kVacuumVariance * Eigen::Matrix2d::Identity());
}

GaussianState add_classical_noise(const GaussianState& state, int mode,
                                  double var_x, double var_p) {
    if (mode < 0 || mode >= state.n_modes)
        throw std::invalid_argument("add_classical_noise: mode out of range");
    if (!(var_x >= 0.0) || !(var_p >= 0.0) || !std::isfinite(var_x) || !std::isfinite(var_p))
        throw std::invalid_argument("add_classical_noise: variances must be finite and >= 0");
    Eigen::MatrixXd cov = state.cov;
    cov(2 * mode, 2 * mode) += var_x;
    cov(2 * mode + 1, 2 * mode + 1) += var_p;
    return GaussianState(state.mean, cov);
}

SymplecticOp single_mode_squeezer(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("single_mode_squeezer: non-finite r");
    Eigen::Matrix2d s;
    s << std::exp(r), 0.0, 0.0, std::exp(-r);
    return SymplecticOp(s, "squeeze");
}

SymplecticOp phase_rotation(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("phase_rotation: non-finite theta");
    Eigen::Matrix2d s;
    s << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return SymplecticOp(s, "rotate");
}

SymplecticOp beamsplitter_50_50(int mode_a, int mode_b, int n_modes) {
    if (mode_a == mode_b)
        throw std::invalid_argument("beamsplitter_50_50: modes must be distinct");
    if (mode_a < 0 || mode_b < 0 || mode_a >= n_modes || mode_b >= n_modes)
        throw std::invalid_argument("beamsplitter_50_50: mode out of range");
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const double c = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < 2; ++q) {
        const int ia = 2 * mode_a + q;
        const int ib = 2 * mode_b + q;
        s(ia, ia) = c;
        s(ia, ib) = c;
        s(ib, ia) = c;
        s(ib, ib) = -c;
    }
    return SymplecticOp(s, "bs50");
}

SymplecticOp embed_single_mode(const SymplecticOp& op, int mode, int n_modes) {
    if (op.matrix.rows() != 2)
        throw std::invalid_argument("embed_single_mode: op must be single-mode");
    if (mode < 0 || mode >= n_modes)
        throw std::invalid_argument("embed_single_mode: mode out of range");
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    s.block<2, 2>(2 * mode, 2 * mode) = op.matrix;
    return SymplecticOp(s, op.label);
}

SymplecticOp compose(const SymplecticOp& second, const SymplecticOp& first) {
    if (second.matrix.cols() != first.matrix.rows())
        throw std::invalid_argument("compose: dimension mismatch");
    return SymplecticOp(second.matrix * first.matrix, second.label + "*" + first.label);
}

GaussianState apply(const SymplecticOp& op, const GaussianState& state) {
    if (op.matrix.cols() != state.mean.size())
        throw std::invalid_argument("apply: dimension mismatch");
    Eigen::MatrixXd cov = op.matrix * state.cov * op.matrix.transpose();
    cov = 0.5 * (cov + cov.transpose().eval());
    return GaussianState(op.matrix * state.mean, cov);
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    const int na = 2 * a.n_modes, nb = 2 * b.n_modes;
    Eigen::VectorXd mean(na + nb);
    mean << a.mean, b.mean;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
    cov.topLeftCorner(na, na) = a.cov;
    cov.bottomRightCorner(nb, nb) = b.cov;
    return GaussianState(mean, cov);
}

std::pair<double, double> quadrature_stats(const GaussianState& state,
                                           const QuadratureObservable& obs) {
    if (obs.coefficients.size() != state.mean.size())
        throw std::invalid_argument("quadrature_stats: dimension mismatch");
    const double mean = obs.coefficients.dot(state.mean);
    const double var = obs.coefficients.dot(state.cov * obs.coefficients);
    return {mean, var};
}

QuadratureObservable mode_angle_observable(int mode, double theta, int n_modes) {
    if (mode < 0 || mode >= n_modes)
        throw std::invalid_argument("mode_angle_observable: mode out of range");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n_modes);
    c[2 * mode] = std::cos(theta);
    c[2 * mode + 1] = std::sin(theta);
    return QuadratureObservable(c);
}

Eigen::MatrixXd feedforward_map(const MeasurementPlan& plan, int n_modes) {
    plan.validate(n_modes);
    Eigen::MatrixXd map = Eigen::MatrixXd::Zero(2, 2 * n_modes);
    map(0, 2 * plan.surviving_mode) = 1.0;
    map(1, 2 * plan.surviving_mode + 1) = 1.0;
    for (int i = 0; i < static_cast<int>(plan.measured_modes.size()); ++i) {
        const int col = 2 * plan.measured_modes[i];
        const double c = std::cos(plan.angles[i]);
        const double s = std::sin(plan.angles[i]);
        map(0, col) += plan.gain(0, i) * c;
        map(0, col + 1) += plan.gain(0, i) * s;
        map(1, col) += plan.gain(1, i) * c;
        map(1, col + 1) += plan.gain(1, i) * s;
    }
    return map;
}

GaussianState measure_and_feedforward(const GaussianState& state,
                                      const MeasurementPlan& plan) {
    const Eigen::MatrixXd map = feedforward_map(plan, state.n_modes);
    Eigen::MatrixXd cov = map * state.cov * map.transpose();
    cov = 0.5 * (cov + cov.transpose().eval());
    return GaussianState(map * state.mean, cov);
}

}  // namespace eprgates
