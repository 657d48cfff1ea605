#include "eprgates/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace eprgates;

namespace {

const std::vector<double>* find_row(const ResultTable& t, double key, double tol = 1e-9) {
    for (const auto& row : t.rows)
        if (std::abs(row[0] - key) < tol) return &row;
    return nullptr;
}

std::string meta(const ResultTable& t, const std::string& key) {
    for (const auto& [k, v] : t.metadata)
        if (k == key) return v;
    return {};
}

}  // namespace

TEST_CASE("result table plumbing") {
    ResultTable t;
    t.header = {"a", "b"};
    t.add_meta("k", "v");
    t.add_row({1.0, 2.0});
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(t.add_row({1.0, std::nan("")}), std::invalid_argument);

    const std::string csv = to_csv(t);
    CHECK(csv == "# k=v\na,b\n1,2\n");
    CHECK(to_csv(t) == csv);

    CHECK(format_number(0.123456789123) == "0.123456789");
    CHECK(format_number(-12.0) == "-12");
}

TEST_CASE("experiment defaults") {
    CHECK(default_config(ExperimentKind::Fig2).resource_db == -5.3);
    CHECK(default_config(ExperimentKind::Fig3).resource_db == -4.0);
    CHECK(default_config(ExperimentKind::Fig3).modulation_p_db == 20.0);
    CHECK(default_config(ExperimentKind::Fig5).modulation_x_db == 4.0);
    CHECK(default_config(ExperimentKind::Verify).samples == 1000000);
    CHECK(default_config(ExperimentKind::Cascade).sweep_min_db == 5.0);
}

TEST_CASE("input construction") {
    ExperimentConfig cfg = default_config(ExperimentKind::Fig5);
    const GaussianState mod = make_input_state(cfg);
    CHECK(mod.cov(0, 0) == doctest::Approx(0.25 * std::pow(10.0, 0.4)).epsilon(1e-12));
    CHECK(mod.cov(1, 1) == doctest::Approx(25.0).epsilon(1e-12));

    cfg.input_kind = InputKind::Coherent;
    cfg.mean_x = 2.0;
    cfg.mean_p = -1.0;
    const GaussianState coh = make_input_state(cfg);
    CHECK(coh.mean[0] == 2.0);
    CHECK(coh.cov(0, 0) == 0.25);

    cfg.input_kind = InputKind::Modulated;
    cfg.modulation_x_db = -3.0;
    CHECK_THROWS_AS(make_input_state(cfg), std::invalid_argument);
}

TEST_CASE("fig2: EPR resource beats the cluster resource everywhere") {
    const ResultTable t = run_fig2(default_config(ExperimentKind::Fig2));
    CHECK(t.rows.size() == 101);
    CHECK(t.header[1] == "epr_squeezed_db");

    const auto* zero = find_row(t, 0.0);
    REQUIRE(zero != nullptr);
    // closed form at the identity gate: 10 log10(1 + 2 * 10^{-0.53})
    CHECK((*zero)[1] == doctest::Approx(2.014631772).epsilon(1e-8));
    CHECK((*zero)[2] == doctest::Approx((*zero)[1]).epsilon(1e-12));

    for (const auto& row : t.rows) {
        CHECK(row[1] < row[3]);  // squeezed: EPR below cluster
        CHECK(row[2] < row[4]);  // antisqueezed: EPR below cluster
    }

    // near-ideal resource collapses the squeezed trace onto the -target line
    ExperimentConfig ideal = default_config(ExperimentKind::Fig2);
    ideal.resource_db = -80.0;
    ideal.cluster_resource_db = -80.0;
    for (const auto& row : run_fig2(ideal).rows)
        CHECK(std::abs(row[1] + row[0]) < 1e-4);
}

TEST_CASE("fig3: squeezing-gate traces") {
    const ResultTable t = run_fig3(default_config(ExperimentKind::Fig3));
    CHECK(t.rows.size() >= 101);

    const auto* at12 = find_row(t, -12.0);
    REQUIRE(at12 != nullptr);
    CHECK((*at12)[1] == doctest::Approx(-0.6585).epsilon(1e-4));
    CHECK((*at12)[2] == doctest::Approx(12.2129).epsilon(1e-4));
    CHECK((*at12)[3] == doctest::Approx(8.5161).epsilon(1e-4));
    CHECK((*at12)[4] == doctest::Approx(12.2129).epsilon(1e-4));

    REQUIRE(find_row(t, -4.0) != nullptr);
    REQUIRE(find_row(t, -8.0) != nullptr);

    const auto* zero = find_row(t, 0.0);
    REQUIRE(zero != nullptr);
    CHECK((*zero)[1] == doctest::Approx((*zero)[2]).epsilon(1e-12));
}

TEST_CASE("fig4: fidelity orderings and anchors") {
    const ResultTable t = run_fig4(default_config(ExperimentKind::Fig4));
    CHECK(t.rows.size() == 101);

    const auto* zero = find_row(t, 0.0);
    REQUIRE(zero != nullptr);
    CHECK((*zero)[1] == doctest::Approx(0.715252751).epsilon(1e-6));
    CHECK(std::abs((*zero)[2] - 0.5) < 1e-9);
    CHECK((*zero)[3] == doctest::Approx(0.626111051).epsilon(1e-6));
    CHECK(std::abs((*zero)[4] - 0.4) < 1e-9);

    for (const auto& row : t.rows) {
        CHECK(row[1] > row[3]);  // EPR beats cluster
        CHECK(row[1] > row[2]);  // EPR beats its classical limit
        CHECK(row[3] > row[4]);  // cluster beats its classical limit
    }

    ExperimentConfig ideal = default_config(ExperimentKind::Fig4);
    ideal.resource_db = -69.48;  // r_E ~ 8
    for (const auto& row : run_fig4(ideal).rows) CHECK(row[1] >= 0.9999);
}

TEST_CASE("fig5: fourier gate rotates the modulation pattern") {
    const ExperimentConfig cfg = default_config(ExperimentKind::Fig5);
    const ResultTable t = run_fig5(cfg);
    CHECK(t.rows.size() == 181);

    CHECK(std::stod(meta(t, "input_x_db")) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(std::stod(meta(t, "input_p_db")) == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(std::stod(meta(t, "output_x_db")) == doctest::Approx(20.0344422).epsilon(1e-7));
    CHECK(std::stod(meta(t, "output_p_db")) == doctest::Approx(5.19578731).epsilon(1e-7));

    // row at phi = pi/2 carries the p-quadrature powers
    CHECK(t.rows[90][1] == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(t.rows[90][2] == doctest::Approx(5.19578731).epsilon(1e-7));

    // with a near-ideal resource the output sweep is the input sweep
    // shifted by 90 degrees
    ExperimentConfig ideal = cfg;
    ideal.resource_db = -69.48;
    const ResultTable ti = run_fig5(ideal);
    for (int i = 0; i < 180; ++i) {
        const int j = (i + 90) % 180;
        CHECK(std::abs(ti.rows[i][2] - ti.rows[j][1]) < 1e-6);
    }
}

TEST_CASE("cascade sweep") {
    const ResultTable t = run_cascade(default_config(ExperimentKind::Cascade));
    CHECK(t.rows.size() == 81);
    for (const auto& row : t.rows) {
        CHECK(row[7] < 1e-9);  // residual vs F*S(theta1)
        CHECK(row[5] == doctest::Approx(0.5 * std::pow(10.0, -0.4)).epsilon(1e-9));
        CHECK(row[6] == doctest::Approx(0.5 * std::pow(10.0, -0.4)).epsilon(1e-9));
    }

    const auto* mid = find_row(t, 45.0);
    REQUIRE(mid != nullptr);
    CHECK((*mid)[1] == doctest::Approx(0.0).epsilon(1e-12));   // t_xx
    CHECK((*mid)[2] == doctest::Approx(-1.0).epsilon(1e-12));  // t_xp
    CHECK((*mid)[3] == doctest::Approx(1.0).epsilon(1e-12));   // t_px
    CHECK((*mid)[4] == doctest::Approx(0.0).epsilon(1e-12));   // t_pp

    ExperimentConfig single = default_config(ExperimentKind::Cascade);
    single.theta1_deg = 30.0;
    const ResultTable one = run_cascade(single);
    CHECK(one.rows.size() == 1);
    CHECK(one.rows[0][0] == 30.0);
}

TEST_CASE("angle table") {
    const ResultTable t = run_angles(default_config(ExperimentKind::Angles));
    REQUIRE(t.rows.size() == 3);
    CHECK(std::abs(t.rows[0][1] - 14.10) < 0.01);
    CHECK(std::abs(t.rows[1][1] - 21.70) < 0.01);
    CHECK(std::abs(t.rows[2][1] - 32.25) < 0.01);
    for (const auto& row : t.rows) CHECK(row[2] == -row[1]);

    // grid {-10,-8,-6,-4,-2} plus the -12 dB anchor
    ExperimentConfig extra = default_config(ExperimentKind::Angles);
    extra.sweep_min_db = -10.0;
    extra.sweep_max_db = -2.0;
    extra.sweep_steps = 5;
    CHECK(run_angles(extra).rows.size() == 6);
}

TEST_CASE("verify experiment") {
    ExperimentConfig cfg = default_config(ExperimentKind::Verify);
    cfg.samples = 10000;
    const ResultTable t = run_verify(cfg);
    CHECK(t.rows.size() == 60);
    CHECK(verify_table_passed(t));
    CHECK(meta(t, "gate_kind_codes") == "0=squeeze,1=fourier,2=cascade");

    cfg.fault_gain = 0.9;
    const ResultTable bad = run_verify(cfg);
    CHECK_FALSE(verify_table_passed(bad));
    int fails = 0;
    for (const auto& row : bad.rows)
        if (row.back() == 0.0) ++fails;
    CHECK(fails > 0);

    cfg.samples = 500;
    CHECK_THROWS_AS(run_verify(cfg), std::invalid_argument);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = default_config(ExperimentKind::Fig3);
    cfg.resource_db = 1.0;
    CHECK_THROWS_AS(run_fig3(cfg), std::invalid_argument);

    cfg = default_config(ExperimentKind::Fig3);
    cfg.sweep_steps = 1;
    CHECK_THROWS_AS(run_fig3(cfg), std::invalid_argument);

    cfg = default_config(ExperimentKind::Fig2);
    cfg.sweep_min_db = 5.0;
    cfg.sweep_max_db = 1.0;
    CHECK_THROWS_AS(run_fig2(cfg), std::invalid_argument);
}
