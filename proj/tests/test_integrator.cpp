#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slt/integrator.hpp"

using namespace slt;

namespace {

constexpr double pi = std::numbers::pi;

// Generic RK4 integrator for a complex-vector ODE du/dt = rhs(u); the
// independent path against which the closed-form subflows are checked.
std::vector<cplx> rk4(std::vector<cplx> u, double t_end, int steps,
                      const std::function<std::vector<cplx>(const std::vector<cplx>&)>& rhs) {
    const double h = t_end / steps;
    auto axpy = [](const std::vector<cplx>& u, double a, const std::vector<cplx>& v) {
        std::vector<cplx> out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + a * v[i];
        return out;
    };
    for (int s = 0; s < steps; ++s) {
        const auto k1 = rhs(u);
        const auto k2 = rhs(axpy(u, h / 2, k1));
        const auto k3 = rhs(axpy(u, h / 2, k2));
        const auto k4 = rhs(axpy(u, h, k3));
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return u;
}

Field to_field(const GridSpec& g, const std::vector<cplx>& values) {
    return Field(g, values);
}

std::vector<cplx> to_vec(const Field& f) {
    return {f.values().begin(), f.values().end()};
}

double max_gap(const Field& a, const Field& b) {
    double gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        gap = std::max(gap, std::abs(a.value(k) - b.value(k)));
    return gap;
}

double l2_gap(const Field& a, const Field& b) {
    std::vector<cplx> diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a.value(k) - b.value(k);
    return l2_norm(Field(a.grid(), std::move(diff)));
}

Field inv_cos(const GridSpec& g) {
    return Field::sample(g, [](double x) {
        return cplx{1.0 / (1.0 + 0.2 * std::cos(x)), 0.0};
    });
}

} // namespace

TEST_CASE("free flow") {
    const GridSpec g(1, 32);

    const Field constant = Field::constant(g, cplx{0.7, 0.3});
    CHECK(max_gap(flow_free(constant, 1.7), constant) < 1e-14);

    const Field wave = Field::sample(g, [](double x) { return std::exp(cplx{0.0, x}); });
    const Field rotated = flow_free(wave, pi);
    for (std::size_t k = 0; k < wave.size(); ++k)
        CHECK(std::abs(rotated.value(k) + wave.value(k)) < 1e-12);

    SUBCASE("per-mode modulus preserved") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<cplx> coeffs(g.size());
        for (cplx& c : coeffs) c = cplx{dist(rng), dist(rng)};
        const Spectrum s(g, coeffs);
        const Spectrum st = flow_free(s, 0.37);
        for (std::size_t i = 0; i < s.size(); ++i)
            CHECK(std::abs(std::abs(st.coefficient_at(i)) -
                           std::abs(s.coefficient_at(i))) < 1e-14);
    }

    SUBCASE("matches RK4 on a 4-point grid") {
        const GridSpec g4(1, 4);
        const Field f0 = Field::sample(g4, [](double x) {
            return 2.0 + std::exp(cplx{0.0, x}) + 0.3 * std::exp(cplx{0.0, -2.0 * x});
        });
        // i du/dt = -Lap u, with the Laplacian applied spectrally.
        auto rhs = [&g4](const std::vector<cplx>& u) {
            const Spectrum s = forward_transform(to_field(g4, u));
            std::vector<cplx> c(s.coefficients().begin(), s.coefficients().end());
            for (std::size_t i = 0; i < c.size(); ++i)
                c[i] *= cplx{0.0, -static_cast<double>(g4.frequency_norm_sq(i))};
            return to_vec(inverse_transform(Spectrum(g4, c)));
        };
        const auto ref = rk4(to_vec(f0), 0.5, 4000, rhs);
        CHECK(max_gap(flow_free(f0, 0.5), to_field(g4, ref)) < 1e-8);
    }
}

TEST_CASE("logarithmic flow") {
    const GridSpec g(1, 16);

    CHECK(max_gap(flow_log(Field::constant(g, 1.0), 3.0, 0.7),
                  Field::constant(g, 1.0)) < 1e-15);

    SUBCASE("constant closed form and RK4 cross-check") {
        const Field f0 = Field::constant(g, 2.0);
        const Field ft = flow_log(f0, 1.0, 0.5);
        const cplx expected = 2.0 * std::exp(cplx{0.0, -0.5 * std::log(4.0)});
        CHECK(max_gap(ft, Field::constant(g, expected)) < 1e-14);

        const GridSpec g4(1, 4);
        const Field h0 = Field::sample(g4, [](double x) {
            return 2.0 + 0.4 * std::exp(cplx{0.0, x});
        });
        auto rhs = [](const std::vector<cplx>& u) {
            std::vector<cplx> out(u.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                out[i] = cplx{0.0, -0.5} * u[i] * std::log(std::norm(u[i]));
            return out;
        };
        const auto ref = rk4(to_vec(h0), 1.0, 4000, rhs);
        CHECK(max_gap(flow_log(h0, 1.0, 0.5), to_field(g4, ref)) < 1e-8);
    }

    SUBCASE("modulus invariant") {
        std::mt19937_64 rng(37);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<cplx> values(g.size());
        for (cplx& v : values) v = cplx{3.0 + dist(rng), dist(rng)};
        const Field f(g, values);
        const Field ft = flow_log(f, 2.3, -0.4);
        for (std::size_t k = 0; k < f.size(); ++k)
            CHECK(std::abs(std::abs(ft.value(k)) - std::abs(f.value(k))) < 1e-14);
    }

    SUBCASE("zero modulus rejected") {
        std::vector<cplx> values(g.size(), cplx{1.0, 0.0});
        values[3] = cplx{0.0, 0.0};
        CHECK_THROWS_AS(flow_log(Field(g, values), 0.1, 0.5), ZeroModulus);
    }
}

TEST_CASE("damping flow") {
    const GridSpec g(1, 16);

    SUBCASE("positive real fields are fixed points") {
        const Field f = Field::sample(g, [](double x) {
            return cplx{2.0 + std::sin(x), 0.0};
        });
        CHECK(max_gap(flow_damp(f, 5.0, 3.0), f) < 1e-14);
    }

    SUBCASE("constant phase contracts") {
        const cplx c = std::exp(cplx{0.0, pi / 4.0});
        const Field ft = flow_damp(Field::constant(g, c), 1.0, 2.0);
        const cplx expected = std::exp(cplx{0.0, (pi / 4.0) * std::exp(-2.0)});
        CHECK(max_gap(ft, Field::constant(g, expected)) < 1e-14);
    }

    SUBCASE("mu = 0 is the identity") {
        const Field f = Field::sample(g, [](double x) {
            return cplx{1.5, 0.0} + 0.5 * std::exp(cplx{0.0, 2.0 * x});
        });
        CHECK(max_gap(flow_damp(f, 7.0, 0.0), f) < 1e-14);
    }

    SUBCASE("RK4 cross-check") {
        const GridSpec g4(1, 4);
        const Field h0 = Field::sample(g4, [](double x) {
            return (2.0 + 0.3 * std::cos(x)) * std::exp(cplx{0.0, 0.4 * std::sin(x)});
        });
        const double mu = 1.3;
        auto rhs = [mu](const std::vector<cplx>& u) {
            std::vector<cplx> out(u.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                out[i] = cplx{0.0, -mu * std::arg(u[i])} * u[i];
            return out;
        };
        const auto ref = rk4(to_vec(h0), 1.0, 4000, rhs);
        CHECK(max_gap(flow_damp(h0, 1.0, mu), to_field(g4, ref)) < 1e-8);
    }

    SUBCASE("branch-cut proximity is counted") {
        BranchStats stats;
        const Field f = Field::constant(g, std::exp(cplx{0.0, pi - 1e-9}));
        flow_damp(f, 0.1, 1.0, &stats);
        CHECK(stats.near_cut == static_cast<long>(g.size()));
    }
}

TEST_CASE("splitting step") {
    const GridSpec g(1, 32);
    const ModelParams params(0.5, 2.0);

    SUBCASE("dt = 0 is the identity") {
        const Field f = inv_cos(g);
        CHECK(max_gap(step(f, params, SplitScheme{SchemeKind::LieTrotter, 0.0}), f) <
              1e-14);
    }

    SUBCASE("constant one is a fixed point") {
        Field f = Field::constant(g, 1.0);
        const SplitScheme scheme{SchemeKind::LieTrotter, 0.05};
        for (int k = 0; k < 100; ++k) f = step(f, params, scheme);
        CHECK(max_gap(f, Field::constant(g, 1.0)) < 1e-12);
    }

    SUBCASE("plane waves are reproduced exactly up to roundoff") {
        const ModelParams undamped(0.5, 0.0);
        const double rho = 1.3, theta0 = 0.2;
        const Field f0 = plane_wave_solution(g, rho, 2, theta0, 0.5, 0.0);
        const double dt = 1e-2;
        const Field one_step = step(f0, undamped, SplitScheme{SchemeKind::LieTrotter, dt});
        CHECK(max_gap(one_step, plane_wave_solution(g, rho, 2, theta0, 0.5, dt)) < 1e-13);
    }

    SUBCASE("L2 norm preserved per step") {
        const Field f = inv_cos(g);
        const Field after = step(f, params, SplitScheme{SchemeKind::Strang, 0.01});
        CHECK(std::abs(l2_norm(after) - l2_norm(f)) < 1e-12);
    }

    SUBCASE("domain violation aborts") {
        // A deep pointwise dip below the modulus-ratio bound.
        const Field f = Field::sample(g, [](double x) {
            return 1.0 + 0.999 * std::exp(cplx{0.0, x});
        });
        CHECK_THROWS_AS(step(f, params, SplitScheme{SchemeKind::LieTrotter, 0.01}),
                        DomainViolation);
    }
}

TEST_CASE("evolve") {
    const GridSpec g(1, 32);

    SUBCASE("plane wave stays on the exact orbit over many steps") {
        const ModelParams params(0.5, 0.0);
        const Field f0 = plane_wave_solution(g, 1.2, 1, 0.0, 0.5, 0.0);
        const Trajectory traj = evolve(f0, params, SplitScheme{SchemeKind::LieTrotter, 1e-2},
                                       10.0, {});
        CHECK(l2_gap(traj.final_state,
                     plane_wave_solution(g, 1.2, 1, 0.0, 0.5, 10.0)) < 1e-8);
        CHECK(traj.times.front() == 0.0);
        CHECK(traj.times.size() == 1001);
    }

    SUBCASE("L2 conservation over many steps") {
        const ModelParams params(0.5, 0.0);
        const Field f0 = plane_wave_solution(g, 2.0, 1, 0.3, 0.5, 0.0);
        const double rho0 = l2_norm(f0);
        Observer norm_obs{"l2", {"l2"}, [](const Field& f) {
                              return std::vector<double>{l2_norm(f)};
                          }};
        const Trajectory traj = evolve(f0, params, SplitScheme{SchemeKind::LieTrotter, 1e-2},
                                       100.0, std::span(&norm_obs, 1));
        for (const auto& row : traj.observations.at("l2"))
            CHECK(std::abs(row[0] - rho0) / rho0 < 1e-10);
    }

    SUBCASE("errors carry the failing time") {
        const Field f0 = Field::sample(g, [](double x) {
            return 1.0 + 0.999 * std::exp(cplx{0.0, x});
        });
        const ModelParams params(0.5, 2.0);
        try {
            evolve(f0, params, SplitScheme{SchemeKind::LieTrotter, 0.25}, 1.0, {});
            FAIL("expected DomainViolation");
        } catch (const DomainViolation& e) {
            CHECK(std::string(e.what()).find("at t =") != std::string::npos);
        }
    }
}

TEST_CASE("splitting convergence order") {
    const GridSpec g(1, 32);
    const ModelParams params(0.5, 2.0);
    const Field f0 = inv_cos(g);
    const double t_end = 1.0;

    auto run = [&](SchemeKind kind, double dt) {
        const SplitScheme scheme{kind, dt};
        Field state = f0;
        const long steps = std::lround(t_end / dt);
        for (long k = 0; k < steps; ++k) state = step(state, params, scheme);
        return state;
    };

    for (SchemeKind kind : {SchemeKind::LieTrotter, SchemeKind::Strang}) {
        const Field ref = run(kind, 1e-4);
        const double e1 = l2_gap(run(kind, 2e-2), ref);
        const double e2 = l2_gap(run(kind, 1e-2), ref);
        const double order = std::log2(e1 / e2);
        if (kind == SchemeKind::LieTrotter) {
            CHECK(order == doctest::Approx(1.0).epsilon(0.3));
        } else {
            CHECK(order == doctest::Approx(2.0).epsilon(0.3));
        }
    }
}

TEST_CASE("plane wave and constant solutions") {
    const GridSpec g(1, 16);

    const Field unit = plane_wave_solution(g, 1.0, 0, 0.0, 0.7, 5.0);
    CHECK(max_gap(unit, Field::constant(g, 1.0)) < 1e-14);

    const Field rotated = plane_wave_solution(g, 1.0, 1, 0.0, 0.3, pi);
    const Field expected = Field::sample(g, [](double x) {
        return std::exp(cplx{0.0, x - pi});
    });
    CHECK(max_gap(rotated, expected) < 1e-13);

    const Field scaled = plane_wave_solution(g, std::exp(1.0), 0, 0.0, 0.5, 1.0);
    const cplx target = std::exp(1.0) * std::exp(cplx{0.0, -1.0});
    CHECK(max_gap(scaled, Field::constant(g, target)) < 1e-13);

    CHECK(std::abs(constant_solution(1.0, 0.7, 2.0) - 1.0) < 1e-15);
    CHECK(std::abs(constant_solution(std::exp(1.0), 1.0, 2.0) -
                   std::exp(1.0) * std::exp(cplx{0.0, -1.0})) < 1e-14);
    CHECK(std::abs(std::abs(constant_solution(3.7, -0.3, 1.1)) - 3.7) < 1e-14);
}

TEST_CASE("gauge transform") {
    const GridSpec g(1, 16);
    const ModelParams params(0.5, 2.0);
    const Field f = inv_cos(g);

    CHECK(max_gap(gauge_transform(f, 1.0, params, 3.0), f) < 1e-14);

    const Field at0 = gauge_transform(f, 2.0, params, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k)
        CHECK(std::abs(at0.value(k) - 2.0 * f.value(k)) < 1e-14);

    // Large-time phase approaches -2 (lambda/mu) log kappa.
    const Field late = gauge_transform(f, 2.0, params, 50.0);
    const cplx limit_factor =
        2.0 * std::exp(cplx{0.0, -2.0 * (0.5 / 2.0) * std::log(2.0)});
    for (std::size_t k = 0; k < f.size(); ++k)
        CHECK(std::abs(late.value(k) - limit_factor * f.value(k)) < 1e-10);

    CHECK_THROWS_AS(gauge_transform(f, 2.0, ModelParams(0.5, 0.0), 1.0), InvalidParam);
}

TEST_CASE("scaling transform maps plane waves across amplitudes") {
    const GridSpec g(1, 16);
    const Field f = inv_cos(g);

    CHECK(max_gap(scaling_transform(f, 1.0, 0.5, 2.0), f) < 1e-14);

    const Field at0 = scaling_transform(f, 2.0, 0.5, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k)
        CHECK(std::abs(at0.value(k) - 2.0 * f.value(k)) < 1e-14);

    // nu_m with L2 norm rho must land on nu_m with norm kappa*rho.
    const double rho = 1.3, kappa = 2.0, lambda = 0.5, t = 0.7;
    const Field scaled = scaling_transform(
        plane_wave_solution(g, rho, 1, 0.0, lambda, t), kappa, lambda, t);
    CHECK(max_gap(scaled, plane_wave_solution(g, kappa * rho, 1, 0.0, lambda, t)) <
          1e-13);
}

TEST_CASE("galilean transform") {
    const GridSpec g(1, 32);
    const Field f = inv_cos(g);

    CHECK(max_gap(galilean_transform(f, 0, 1.23), f) < 1e-13);

    const Field at0 = galilean_transform(f, 2, 0.0);
    for (int k = 0; k < g.points_per_axis(); ++k)
        CHECK(std::abs(at0.value(k) -
                       f.value(k) * std::exp(cplx{0.0, 2.0 * g.coord(k)})) < 1e-13);

    SUBCASE("boost with v = -m reduces the m-mode plane wave to mode zero") {
        const double rho = 1.4, lambda = 0.5;
        for (double t : {0.0, 0.3, 1.7}) {
            const Field nu_m = plane_wave_solution(g, rho, 2, 0.0, lambda, t);
            const Field reduced = galilean_transform(nu_m, -2, t);
            const Field nu_0 = plane_wave_solution(g, rho, 0, 0.0, lambda, t);
            CHECK(max_gap(reduced, nu_0) < 1e-12);
        }
    }
}

TEST_CASE("energy") {
    const GridSpec g(1, 32);

    CHECK(energy(Field::constant(g, 1.0), 0.7) == doctest::Approx(-0.7).epsilon(1e-13));
    CHECK(energy(Field::sample(g, [](double x) { return std::exp(cplx{0.0, x}); }),
                 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(energy(Field::constant(g, std::exp(0.5)), 1.0)) < 1e-13);

    SUBCASE("drift shrinks under step refinement") {
        const ModelParams params(0.5, 0.0);
        const Field f0 = inv_cos(g);
        auto max_drift = [&](double dt) {
            const double e0 = energy(f0, params.lambda);
            Field state = f0;
            const long steps = std::lround(20.0 / dt);
            double drift = 0.0;
            for (long k = 0; k < steps; ++k) {
                state = step(state, params, SplitScheme{SchemeKind::LieTrotter, dt});
                drift = std::max(drift, std::abs(energy(state, params.lambda) - e0));
            }
            return drift;
        };
        const double coarse = max_drift(2e-2);
        const double fine = max_drift(1e-2);
        CHECK(fine < coarse);
        CHECK(coarse < 0.1); // bounded, no secular blow-up
    }
}
