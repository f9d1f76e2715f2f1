#include <doctest.h>

#include "slt/config.hpp"

using namespace slt;

TEST_CASE("preset configurations") {
    const ExperimentConfig relax = preset_config("relax");
    CHECK(relax.params.lambda == 0.5);
    CHECK(relax.params.mu == 2.0);
    CHECK(relax.grid_points == 128);
    CHECK(relax.scheme.dt == 1e-2);
    CHECK(relax.t_max == 100.0);
    CHECK(relax.initial.kind == InitialCondition::Kind::InvCos);

    CHECK(preset_config("hamiltonian").params.mu == 0.0);
    CHECK(preset_config("hamiltonian").observe_energy);
    CHECK(preset_config("overdamped").params.mu == 8.0);
    const ExperimentConfig focusing = preset_config("focusing");
    CHECK(focusing.params.lambda == -1.0);
    CHECK(focusing.params.exploratory);
    CHECK_THROWS_AS(preset_config("nope"), InvalidParam);
    CHECK(preset_names().size() == 4);
}

TEST_CASE("config text parsing") {
    const std::string text = R"(
# comment line
lambda = 0.25
mu=4
K=64
scheme=strang
dt=0.005
t_max=12  # trailing comment
initial=plane-wave
rho=1.5
m=2
amplitude=0.001
modes=1,3
track_modes=0,1,2,3
fit_lo=2
fit_hi=10
seed=99
)";
    const ExperimentConfig cfg = parse_config_text(text);
    CHECK(cfg.params.lambda == 0.25);
    CHECK(cfg.params.mu == 4.0);
    CHECK(cfg.grid_points == 64);
    CHECK(cfg.scheme.kind == SchemeKind::Strang);
    CHECK(cfg.scheme.dt == 0.005);
    CHECK(cfg.t_max == 12.0);
    CHECK(cfg.initial.kind == InitialCondition::Kind::PlaneWave);
    CHECK(cfg.initial.rho == 1.5);
    CHECK(cfg.initial.m == 2);
    CHECK(cfg.initial.perturbation_modes == std::vector<int>{1, 3});
    CHECK(cfg.track_modes == std::vector<int>{0, 1, 2, 3});
    CHECK(cfg.seed == 99);
}

TEST_CASE("config rejects unknown keys and malformed values") {
    CHECK_THROWS_AS(parse_config_text("unknown_key=1\n"), InvalidParam);
    CHECK_THROWS_AS(parse_config_text("lambda=abc\n"), InvalidParam);
    CHECK_THROWS_AS(parse_config_text("mu=1.0x\n"), InvalidParam);
    CHECK_THROWS_AS(parse_config_text("scheme=euler\n"), InvalidParam);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), InvalidParam);
    CHECK_THROWS_AS(parse_config_text("lambda=-1\n"), InvalidParam);
    // ... unless the exploratory flag is set in the same config.
    const ExperimentConfig cfg = parse_config_text("lambda=-1\nexploratory=1\n");
    CHECK(cfg.params.lambda == -1.0);
}

TEST_CASE("coefficient lists") {
    const ExperimentConfig cfg = parse_config_text(
        "initial=coeffs\ncoeffs=0:1:0;1:0.001:0.002;-1:0.001:-0.002\n");
    REQUIRE(cfg.initial.coefficients.size() == 3);
    CHECK(cfg.initial.coefficients[1].first == 1);
    CHECK(cfg.initial.coefficients[1].second == cplx{0.001, 0.002});
    CHECK(cfg.initial.coefficients[2].first == -1);
}

TEST_CASE("echo round trip preserves every field") {
    ExperimentConfig cfg = preset_config("overdamped");
    cfg.initial.kind = InitialCondition::Kind::PlaneWave;
    cfg.initial.rho = 2.5;
    cfg.initial.amplitude = 1e-3;
    cfg.initial.perturbation_modes = {1, 2};
    cfg.seed = 1234;
    cfg.fit_lo = 7.0;
    const ExperimentConfig again = parse_config_text(echo_config(cfg));
    CHECK(echo_config(again) == echo_config(cfg));
}
