#include "eprgates/gaussian.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace eprgates;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("vacuum state") {
    const GaussianState one = make_vacuum(1);
    CHECK(one.mean.isZero(0.0));
    CHECK(max_abs(one.cov - 0.25 * Eigen::Matrix2d::Identity()) == 0.0);

    const GaussianState two = make_vacuum(2);
    CHECK(two.cov.rows() == 4);
    CHECK(max_abs(two.cov - 0.25 * Eigen::MatrixXd::Identity(4, 4)) == 0.0);

    // pure state saturates the uncertainty bound
    CHECK(symplectic_eigenvalues(one)[0] == doctest::Approx(0.25).epsilon(1e-14));

    CHECK_THROWS_AS(make_vacuum(0), std::invalid_argument);
}

TEST_CASE("coherent state") {
    CHECK(max_abs(make_coherent(0, 0).cov - make_vacuum(1).cov) == 0.0);

    const GaussianState s = make_coherent(3.0, -1.0);
    CHECK(s.mean[0] == 3.0);
    CHECK(s.mean[1] == -1.0);
    CHECK(max_abs(s.cov - 0.25 * Eigen::Matrix2d::Identity()) == 0.0);

    // Fourier rotates the mean by 90 degrees
    const GaussianState rotated = apply(phase_rotation(kPi / 2), make_coherent(1, 0));
    CHECK(rotated.mean[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rotated.mean[1] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(make_coherent(std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_coherent(0.0, INFINITY), std::invalid_argument);
}

TEST_CASE("classical noise injection") {
    const GaussianState vac = make_vacuum(1);

    // 20 dB phase modulation: variance 99 * 0.25 on top of shot noise
    const GaussianState loud = add_classical_noise(vac, 0, 0.0, 99 * 0.25);
    CHECK(loud.cov(1, 1) == doctest::Approx(25.0));
    CHECK(loud.cov(0, 0) == 0.25);
    CHECK(loud.mean.isZero(0.0));

    const GaussianState same = add_classical_noise(vac, 0, 0.0, 0.0);
    CHECK(max_abs(same.cov - vac.cov) == 0.0);

    // 4 dB amplitude modulation
    const GaussianState four = add_classical_noise(vac, 0, 0.25 * (std::pow(10, 0.4) - 1), 0.0);
    CHECK(four.cov(0, 0) == doctest::Approx(0.25 * std::pow(10, 0.4)).epsilon(1e-14));

    CHECK_THROWS_AS(add_classical_noise(vac, 0, -0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(add_classical_noise(vac, 1, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("single-mode squeezer") {
    CHECK(max_abs(single_mode_squeezer(0.0).matrix - Eigen::Matrix2d::Identity()) == 0.0);

    // -4 dB phase squeezing of the vacuum
    const double r = 0.2 * std::numbers::ln10;  // e^{-2r} = 10^{-0.4}
    const GaussianState sq = apply(single_mode_squeezer(r), make_vacuum(1));
    CHECK(sq.cov(1, 1) == doctest::Approx(0.25 * std::pow(10, -0.4)).epsilon(1e-12));

    for (double rr : {-3.0, -0.7, 0.0, 1.3, 8.0}) {
        const Eigen::MatrixXd s = single_mode_squeezer(rr).matrix;
        CHECK(max_abs(s * symplectic_form(1) * s.transpose() - symplectic_form(1)) < 1e-10);
    }
    CHECK_THROWS_AS(single_mode_squeezer(std::nan("")), std::invalid_argument);
}

TEST_CASE("phase rotation") {
    Eigen::Matrix2d fourier;
    fourier << 0, -1, 1, 0;
    CHECK(max_abs(phase_rotation(kPi / 2).matrix - fourier) < 1e-12);
    CHECK(max_abs(phase_rotation(0.0).matrix - Eigen::Matrix2d::Identity()) == 0.0);

    const Eigen::Matrix2d eighth = phase_rotation(kPi / 4).matrix;
    CHECK(max_abs(eighth * eighth - phase_rotation(kPi / 2).matrix) < 1e-15);
}

TEST_CASE("50/50 beamsplitter") {
    const SymplecticOp bs = beamsplitter_50_50(0, 1, 2);

    const GaussianState vacua = apply(bs, make_vacuum(2));
    CHECK(max_abs(vacua.cov - 0.25 * Eigen::MatrixXd::Identity(4, 4)) < 1e-15);

    const GaussianState in = tensor(make_coherent(1, 0), make_coherent(1, 0));
    const GaussianState out = apply(bs, in);
    CHECK(out.mean[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(out.mean[2] == doctest::Approx(0.0).epsilon(1e-14));

    const Eigen::MatrixXd m = bs.matrix;
    CHECK(max_abs(m * symplectic_form(2) * m.transpose() - symplectic_form(2)) < 1e-10);
    CHECK(max_abs(m * m.transpose() - Eigen::MatrixXd::Identity(4, 4)) < 1e-15);

    CHECK_THROWS_AS(beamsplitter_50_50(1, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(beamsplitter_50_50(0, 2, 2), std::invalid_argument);
}

TEST_CASE("apply") {
    const GaussianState probe = add_classical_noise(make_coherent(0.7, -0.2), 0, 0.1, 0.4);

    const GaussianState same = apply(phase_rotation(0.0), probe);
    CHECK(max_abs(same.cov - probe.cov) == 0.0);
    CHECK((same.mean - probe.mean).cwiseAbs().maxCoeff() == 0.0);

    const GaussianState round =
        apply(single_mode_squeezer(-0.9), apply(single_mode_squeezer(0.9), probe));
    CHECK(max_abs(round.cov - probe.cov) < 1e-10);
    CHECK((round.mean - probe.mean).cwiseAbs().maxCoeff() < 1e-10);

    GaussianState four = probe;
    for (int i = 0; i < 4; ++i) four = apply(phase_rotation(kPi / 2), four);
    CHECK(max_abs(four.cov - probe.cov) < 1e-12);
    CHECK((four.mean - probe.mean).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(apply(beamsplitter_50_50(0, 1, 2), probe), std::invalid_argument);
}

TEST_CASE("quadrature statistics") {
    const GaussianState vac = make_vacuum(1);
    const auto [m0, v0] = quadrature_stats(vac, mode_angle_observable(0, 0.0, 1));
    CHECK(m0 == 0.0);
    CHECK(v0 == 0.25);

    for (double th : {0.3, 1.1, 2.6}) {
        const auto [m, v] = quadrature_stats(vac, mode_angle_observable(0, th, 1));
        CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
    }

    const double r = 0.2 * std::numbers::ln10;
    const GaussianState sq = apply(single_mode_squeezer(r), vac);
    const auto [ms, vs] = quadrature_stats(sq, mode_angle_observable(0, kPi / 2, 1));
    CHECK(vs == doctest::Approx(0.25 * std::pow(10, -0.4)).epsilon(1e-12));

    // angle decomposition on a diagonal covariance
    const GaussianState aniso = add_classical_noise(vac, 0, 1.7, 0.05);
    for (double th : {0.0, 0.4, 1.0, 1.9, 3.0}) {
        const auto [m, v] = quadrature_stats(aniso, mode_angle_observable(0, th, 1));
        const double expected = std::cos(th) * std::cos(th) * aniso.cov(0, 0) +
                                std::sin(th) * std::sin(th) * aniso.cov(1, 1);
        CHECK(v == doctest::Approx(expected).epsilon(1e-15));
    }

    CHECK_THROWS_AS(quadrature_stats(vac, mode_angle_observable(0, 0.0, 2)),
                    std::invalid_argument);
}

TEST_CASE("observable validation") {
    CHECK_THROWS_AS(QuadratureObservable{Eigen::VectorXd::Zero(2)}, std::invalid_argument);
    Eigen::VectorXd bad(2);
    bad << 1.0, std::nan("");
    CHECK_THROWS_AS(QuadratureObservable{bad}, std::invalid_argument);
}

TEST_CASE("measure and feedforward") {
    const GaussianState joint =
        apply(beamsplitter_50_50(0, 1, 3),
              tensor(add_classical_noise(make_coherent(1.0, 2.0), 0, 0.6, 0.0),
                     make_vacuum(2)));

    SUBCASE("zero gain reduces to the partial trace") {
        MeasurementPlan plan{{0, 1}, {0.3, -1.2}, 2, Eigen::MatrixXd::Zero(2, 2)};
        const GaussianState out = measure_and_feedforward(joint, plan);
        CHECK(max_abs(out.cov - joint.cov.block<2, 2>(4, 4)) == 0.0);
        CHECK((out.mean - joint.mean.segment<2>(4)).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("output mean is linear in the input mean") {
        Eigen::MatrixXd gain(2, 2);
        gain << 0.4, -1.0, 2.0, 0.3;
        MeasurementPlan plan{{0, 1}, {0.9, -0.9}, 2, gain};
        const GaussianState base = measure_and_feedforward(joint, plan);

        GaussianState scaled_in(3.0 * joint.mean, joint.cov);
        const GaussianState scaled = measure_and_feedforward(scaled_in, plan);
        CHECK((scaled.mean - 3.0 * base.mean).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(max_abs(scaled.cov - base.cov) == 0.0);
    }

    SUBCASE("invalid plans are rejected") {
        const Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
        CHECK_THROWS_AS(
            measure_and_feedforward(joint, MeasurementPlan{{0, 0}, {0.1, 0.2}, 2, g}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            measure_and_feedforward(joint, MeasurementPlan{{0, 2}, {0.1, 0.2}, 2, g}),
            std::invalid_argument);
        CHECK_THROWS_AS(
            measure_and_feedforward(joint, MeasurementPlan{{0, 3}, {0.1, 0.2}, 2, g}),
            std::invalid_argument);
        Eigen::MatrixXd bad_gain(2, 2);
        bad_gain << 1.0, 2.0, 3.0, std::nan("");
        CHECK_THROWS_AS(
            measure_and_feedforward(joint, MeasurementPlan{{0, 1}, {0.1, 0.2}, 2, bad_gain}),
            std::invalid_argument);
    }
}

TEST_CASE("state validation") {
    Eigen::MatrixXd asym(2, 2);
    asym << 0.3, 0.1, -0.1, 0.3;
    CHECK_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), asym), std::invalid_argument);

    // below the uncertainty bound
    CHECK_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), 0.1 * Eigen::Matrix2d::Identity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(GaussianState(Eigen::Vector2d::Zero(), -Eigen::Matrix2d::Identity()),
                    std::invalid_argument);

    Eigen::VectorXd odd(3);
    odd.setZero();
    CHECK_THROWS_AS(GaussianState(odd, Eigen::MatrixXd::Identity(3, 3)),
                    std::invalid_argument);
}

TEST_CASE("random symplectic products stay symplectic and physical") {
    std::mt19937 gen(20240811);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> rdist(-1.0, 1.0);
    std::uniform_int_distribution<int> which(0, 2);

    for (int it = 0; it < 200; ++it) {
        SymplecticOp s = embed_single_mode(phase_rotation(angle(gen)), 0, 2);
        for (int k = 0; k < 4; ++k) {
            switch (which(gen)) {
                case 0:
                    s = compose(embed_single_mode(single_mode_squeezer(rdist(gen)), k % 2, 2), s);
                    break;
                case 1:
                    s = compose(embed_single_mode(phase_rotation(angle(gen)), k % 2, 2), s);
                    break;
                default:
                    s = compose(beamsplitter_50_50(0, 1, 2), s);
            }
        }
        const Eigen::MatrixXd defect =
            s.matrix * symplectic_form(2) * s.matrix.transpose() - symplectic_form(2);
        CHECK(max_abs(defect) < 1e-10);

        const GaussianState evolved = apply(s, make_vacuum(2));
        CHECK(symplectic_eigenvalues(evolved).minCoeff() >= 0.25 - 1e-9);
        CHECK(max_abs(evolved.cov - evolved.cov.transpose()) <= 1e-12);
    }
}
