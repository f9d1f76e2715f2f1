#include "slt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace slt {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Ols {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};

Ols least_squares(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    double y_lo = y.empty() ? 0.0 : y[0], y_hi = y_lo;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        y_lo = std::min(y_lo, y[i]);
        y_hi = std::max(y_hi, y[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    Ols out;
    out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    out.intercept = my - out.slope * mx;
    // A constant series is a perfect fit; the variance of bit-identical
    // data is pure accumulation noise.
    const bool constant = y_hi - y_lo <= 4e-15 * std::max(1.0, std::abs(my));
    if (!constant && syy > 0.0) {
        const double ss_res = syy - out.slope * sxy;
        out.r_squared = 1.0 - std::max(0.0, ss_res) / syy;
    }
    return out;
}

} // namespace

Field make_initial(const InitialCondition& init, const GridSpec& grid,
                   unsigned long seed) {
    switch (init.kind) {
        case InitialCondition::Kind::InvCos:
            return Field::sample(grid, [](double x) {
                return cplx{1.0 / (1.0 + 0.2 * std::cos(x)), 0.0};
            });
        case InitialCondition::Kind::PlaneWave: {
            if (!(init.rho > 0.0)) throw InvalidParam("rho must be positive");
            std::vector<double> phases(init.perturbation_modes.size(), 0.0);
            if (init.random_phases) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> uniform(-std::numbers::pi,
                                                               std::numbers::pi);
                for (double& phi : phases) phi = uniform(rng);
            }
            const InitialCondition ic = init;
            return Field::sample(grid, [&ic, &phases](double x) {
                cplx perturbation{0.0, 0.0};
                for (std::size_t i = 0; i < ic.perturbation_modes.size(); ++i) {
                    const double arg = ic.perturbation_modes[i] * x + phases[i];
                    perturbation += cplx{std::cos(arg), std::sin(arg)};
                }
                const cplx carrier{std::cos(ic.m * x), std::sin(ic.m * x)};
                return ic.rho * carrier * (1.0 + ic.amplitude * perturbation);
            });
        }
        case InitialCondition::Kind::Coefficients: {
            Spectrum s = Spectrum::zero(grid);
            for (const auto& [freq, value] : init.coefficients) {
                s = s.with_coefficient(s.index_of(std::span<const int>(&freq, 1)),
                                       value);
            }
            return inverse_transform(s);
        }
    }
    throw InvalidParam("unknown initial condition kind");
}

RateFit fit_rate(const ActionSeries& series, double t_lo, double t_hi,
                 double floor) {
    if (series.times.size() != series.amplitudes.size())
        throw InvalidParam("action series lengths mismatch");
    if (!(t_lo < t_hi)) throw InvalidParam("fit window must have t_lo < t_hi");

    RateFit fit;
    fit.mode = series.mode;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;

    std::vector<double> t, log_amp;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double ti = series.times[i];
        if (ti < t_lo || ti > t_hi) continue;
        if (series.amplitudes[i] <= floor) {
            // Shrink to the part of the window before the numerical floor.
            fit.floor_hit = true;
            break;
        }
        t.push_back(ti);
        log_amp.push_back(std::log(series.amplitudes[i]));
    }
    if (t.size() < 10)
        throw DegenerateWindow("fewer than 10 usable samples in fit window");
    fit.t_hi = t.back();

    const Ols ols = least_squares(t, log_amp);
    fit.alpha_hat = -ols.slope;
    fit.r_squared = ols.r_squared;
    return fit;
}

ActionSeries linearized_oracle(int j, const ModelParams& params, cplx xi0,
                               cplx eta0, double t_max, double dt) {
    if (j == 0) throw InvalidParam("linearized_oracle requires j != 0");
    if (!(t_max > 0.0) || !(dt > 0.0)) throw InvalidParam("bad oracle time range");
    const int n = j * j;
    const BlockDiagonalization diag =
        diagonalize(block_matrix(n, params.lambda, params.mu));
    const std::array<cplx, 2> u0 = diag.P_inv * std::array<cplx, 2>{xi0, eta0};

    const long steps = std::lround(t_max / dt);
    ActionSeries series{j, {}, {}};
    series.times.reserve(static_cast<std::size_t>(steps) + 1);
    series.amplitudes.reserve(static_cast<std::size_t>(steps) + 1);
    const bool jordan = diag.regime.tag == RegimeTag::Jordan;
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        std::array<cplx, 2> ut;
        if (jordan) {
            // exp(-it D) = e^{-it d} [[1, -it b], [0, 1]] for D = [[d, b], [0, d]]
            const cplx scale = std::exp(cplx{0.0, -t} * diag.D.a);
            ut = {scale * (u0[0] + cplx{0.0, -t} * diag.D.b * u0[1]),
                  scale * u0[1]};
        } else {
            ut = {std::exp(cplx{0.0, -t} * diag.D.a) * u0[0],
                  std::exp(cplx{0.0, -t} * diag.D.d) * u0[1]};
        }
        const std::array<cplx, 2> v = diag.P * ut;
        series.times.push_back(t);
        series.amplitudes.push_back(std::abs(v[0]));
    }
    return series;
}

ThetaDriftStats theta_drift(const std::vector<double>& times,
                            const std::vector<double>& theta_wrapped,
                            const ModelParams& params, long m_norm_sq,
                            double rho) {
    if (times.size() != theta_wrapped.size() || times.size() < 2)
        throw InvalidParam("theta series too short");
    ThetaDriftStats stats;
    stats.theta_unwrapped.resize(times.size());
    stats.theta_unwrapped[0] = theta_wrapped[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        double delta = theta_wrapped[i] - theta_wrapped[i - 1];
        while (delta <= -std::numbers::pi) delta += 2.0 * std::numbers::pi;
        while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
        stats.theta_unwrapped[i] = stats.theta_unwrapped[i - 1] + delta;
    }

    const Ols ols = least_squares(times, stats.theta_unwrapped);
    stats.mean_velocity = ols.slope;
    stats.theta_final = stats.theta_unwrapped.back();
    if (params.mu > 0.0) {
        stats.theta_limit = -2.0 * params.lambda * std::log(rho) / params.mu;
        stats.limit_gap = std::abs(stats.theta_final - stats.theta_limit);
    } else {
        stats.predicted_velocity =
            -(static_cast<double>(m_norm_sq) + 2.0 * params.lambda * std::log(rho));
        stats.residual = std::abs(stats.mean_velocity - stats.predicted_velocity);
    }
    return stats;
}

Report run_experiment(const ExperimentConfig& cfg) {
    const GridSpec grid = cfg.grid();
    if (!(cfg.t_max > 0.0) || !(cfg.scheme.dt > 0.0))
        throw InvalidParam("t_max and dt must be positive");
    const long steps = std::lround(cfg.t_max / cfg.scheme.dt);
    if (steps > cfg.step_budget)
        throw InvalidParam("t_max / dt exceeds the configured step budget");
    const int half = cfg.grid_points / 2;
    for (int mode : cfg.track_modes) {
        if (mode < -half || mode >= half)
            throw InvalidParam("tracked mode outside [-K/2, K/2)");
    }

    const Field initial = make_initial(cfg.initial, grid, cfg.seed);
    const double rho = l2_norm(initial);
    const bool damped = cfg.params.mu > 0.0;
    const cplx limit = damped
        ? constant_solution(rho, cfg.params.lambda, cfg.params.mu)
        : cplx{0.0, 0.0};

    // One spectrum per step feeds every tracked quantity. The phase is read
    // off the carrier mode of the initial datum.
    const int carrier =
        cfg.initial.kind == InitialCondition::Kind::PlaneWave ? cfg.initial.m : 0;
    const std::size_t n_modes = cfg.track_modes.size();
    Observer core{
        "core",
        {},
        [&, n_modes, carrier](const Field& f) {
            const Spectrum s = forward_transform(f);
            std::vector<double> row;
            row.reserve(n_modes + 7);
            for (int mode : cfg.track_modes)
                row.push_back(std::abs(s.coefficient(mode)));
            double l2_sq = 0.0, w_l2_sq = 0.0, w_hs_sq = 0.0;
            double dist_l2_sq = 0.0, dist_hs_sq = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                const cplx c = s.coefficient_at(i);
                const double weight = std::pow(
                    1.0 + static_cast<double>(s.grid().frequency_norm_sq(i)),
                    cfg.sobolev_s);
                l2_sq += std::norm(c);
                const cplx cw = i == 0 ? cplx{0.0, 0.0} : c;
                w_l2_sq += std::norm(cw);
                w_hs_sq += weight * std::norm(cw);
                const cplx cd = i == 0 ? c - limit : c;
                dist_l2_sq += std::norm(cd);
                dist_hs_sq += weight * std::norm(cd);
            }
            row.push_back(std::sqrt(l2_sq));
            row.push_back(std::abs(s.coefficient_at(0)));
            row.push_back(std::arg(s.coefficient(carrier)));
            row.push_back(std::sqrt(w_l2_sq));
            row.push_back(std::sqrt(w_hs_sq));
            row.push_back(std::sqrt(dist_l2_sq));
            row.push_back(std::sqrt(dist_hs_sq));
            return row;
        }};
    std::vector<Observer> observers{core};
    if (cfg.observe_energy) {
        observers.push_back(Observer{
            "energy", {}, [lambda = cfg.params.lambda](const Field& f) {
                return std::vector<double>{energy(f, lambda)};
            }});
    }

    const Trajectory traj = evolve(initial, cfg.params, cfg.scheme, cfg.t_max,
                                   observers, 0, cfg.domain);

    Report report;
    report.config_echo = echo_config(cfg);
    report.exploratory = !(cfg.params.lambda > -0.5);
    report.rho_initial = rho;
    report.times = traj.times;
    report.branch_warnings = traj.branch.near_cut;

    const auto& rows = traj.observations.at("core");
    const std::size_t n_times = rows.size();
    for (std::size_t m = 0; m < n_modes; ++m) {
        ActionSeries series{cfg.track_modes[m], traj.times, {}};
        series.amplitudes.reserve(n_times);
        for (const auto& row : rows) series.amplitudes.push_back(row[m]);
        report.actions.push_back(std::move(series));
    }
    std::vector<double> theta_wrapped;
    theta_wrapped.reserve(n_times);
    for (const auto& row : rows) {
        report.l2_series.push_back(row[n_modes + 0]);
        report.a_series.push_back(row[n_modes + 1]);
        theta_wrapped.push_back(row[n_modes + 2]);
        report.w_l2_series.push_back(row[n_modes + 3]);
        report.w_hs_series.push_back(row[n_modes + 4]);
        if (damped) {
            report.dist_l2_series.push_back(row[n_modes + 5]);
            report.dist_hs_series.push_back(row[n_modes + 6]);
        }
    }
    if (cfg.observe_energy) {
        for (const auto& row : traj.observations.at("energy"))
            report.energy_series.push_back(row[0]);
        double drift = 0.0;
        for (double e : report.energy_series)
            drift = std::max(drift, std::abs(e - report.energy_series.front()));
        report.energy_drift_max = drift;
    }

    double l2_drift = 0.0;
    for (double v : report.l2_series)
        l2_drift = std::max(l2_drift, std::abs(v - rho) / rho);
    report.l2_drift_max_rel = l2_drift;

    const bool predictable = damped && cfg.params.lambda > -0.5;
    for (const ActionSeries& series : report.actions) {
        if (series.mode == 0) continue;
        ModeRateRow row;
        row.mode = series.mode;
        try {
            row.fit = fit_rate(series, cfg.fit_lo, cfg.fit_hi);
        } catch (const DegenerateWindow&) {
            row.fit.mode = series.mode;
            row.fit.t_lo = cfg.fit_lo;
            row.fit.t_hi = cfg.fit_hi;
            row.fit.floor_hit = true;
            row.fit.degenerate = true;
            row.fit.alpha_hat = std::numeric_limits<double>::quiet_NaN();
        }
        if (predictable)
            row.prediction = mode_rate(series.mode * series.mode,
                                       cfg.params.lambda, cfg.params.mu);
        report.rates.push_back(std::move(row));
    }

    // For mu = 0 plane-wave data the drift is compared against the
    // unperturbed carrier (amplitude rho as configured); the residual then
    // isolates the perturbation-induced velocity shift. The damped limit
    // always uses the measured norm, which the dynamics preserves.
    const bool plane = cfg.initial.kind == InitialCondition::Kind::PlaneWave;
    const long m_norm_sq =
        plane ? static_cast<long>(cfg.initial.m) * cfg.initial.m : 0;
    const double rho_theta =
        (damped || !plane) ? rho : cfg.initial.rho;
    report.theta =
        theta_drift(traj.times, theta_wrapped, cfg.params, m_norm_sq, rho_theta);
    return report;
}

std::vector<RateComparisonRow> compare_rates(const Report& report) {
    std::vector<RateComparisonRow> rows;
    for (const ModeRateRow& row : report.rates) {
        RateComparisonRow out{row.mode, row.fit.alpha_hat, 0.0, 0.0, false};
        if (row.prediction) {
            out.alpha_theory = row.prediction->alpha;
            out.applicable = true;
            if (out.alpha_theory != 0.0)
                out.relative_deviation =
                    std::abs(out.alpha_hat - out.alpha_theory) /
                    std::abs(out.alpha_theory);
        }
        rows.push_back(out);
    }
    return rows;
}

std::string echo_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "lambda=" << fmt(cfg.params.lambda) << '\n';
    out << "mu=" << fmt(cfg.params.mu) << '\n';
    out << "exploratory=" << (cfg.params.exploratory ? 1 : 0) << '\n';
    out << "K=" << cfg.grid_points << '\n';
    out << "scheme=" << (cfg.scheme.kind == SchemeKind::LieTrotter ? "lie" : "strang")
        << '\n';
    out << "dt=" << fmt(cfg.scheme.dt) << '\n';
    out << "t_max=" << fmt(cfg.t_max) << '\n';
    switch (cfg.initial.kind) {
        case InitialCondition::Kind::InvCos:
            out << "initial=inv-cos\n";
            break;
        case InitialCondition::Kind::PlaneWave: {
            out << "initial=plane-wave\n";
            out << "rho=" << fmt(cfg.initial.rho) << '\n';
            out << "m=" << cfg.initial.m << '\n';
            out << "amplitude=" << fmt(cfg.initial.amplitude) << '\n';
            out << "modes=";
            for (std::size_t i = 0; i < cfg.initial.perturbation_modes.size(); ++i)
                out << (i ? "," : "") << cfg.initial.perturbation_modes[i];
            out << '\n';
            out << "random_phases=" << (cfg.initial.random_phases ? 1 : 0) << '\n';
            break;
        }
        case InitialCondition::Kind::Coefficients: {
            out << "initial=coeffs\n";
            out << "coeffs=";
            for (std::size_t i = 0; i < cfg.initial.coefficients.size(); ++i) {
                const auto& [freq, value] = cfg.initial.coefficients[i];
                out << (i ? ";" : "") << freq << ':' << fmt(value.real()) << ':'
                    << fmt(value.imag());
            }
            out << '\n';
            break;
        }
    }
    out << "track_modes=";
    for (std::size_t i = 0; i < cfg.track_modes.size(); ++i)
        out << (i ? "," : "") << cfg.track_modes[i];
    out << '\n';
    out << "fit_lo=" << fmt(cfg.fit_lo) << '\n';
    out << "fit_hi=" << fmt(cfg.fit_hi) << '\n';
    out << "sobolev_s=" << fmt(cfg.sobolev_s) << '\n';
    out << "observe_energy=" << (cfg.observe_energy ? 1 : 0) << '\n';
    out << "output=" << cfg.output_dir << '\n';
    out << "seed=" << cfg.seed << '\n';
    out << "step_budget=" << cfg.step_budget << '\n';
    out << "mean_floor=" << fmt(cfg.domain.mean_floor) << '\n';
    out << "modulus_ratio=" << fmt(cfg.domain.modulus_ratio) << '\n';
    return out.str();
}

void write_outputs(const Report& report, const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());

    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary); // LF line endings
        if (!out) throw IoError(std::string("cannot open ") + (dir / name).string());
        return out;
    };

    {
        std::ofstream out = open("actions.csv");
        out << 't';
        for (const ActionSeries& s : report.actions) out << ",mode_" << s.mode;
        out << '\n';
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            out << fmt(report.times[i]);
            for (const ActionSeries& s : report.actions)
                out << ',' << fmt(s.amplitudes[i]);
            out << '\n';
        }
    }

    {
        std::ofstream out = open("diagnostics.csv");
        out << "t,l2,a,theta,w_l2,w_hs";
        if (!report.dist_l2_series.empty()) out << ",dist_l2,dist_hs";
        if (!report.energy_series.empty()) out << ",energy";
        out << '\n';
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            out << fmt(report.times[i]) << ',' << fmt(report.l2_series[i]) << ','
                << fmt(report.a_series[i]) << ','
                << fmt(report.theta.theta_unwrapped[i]) << ','
                << fmt(report.w_l2_series[i]) << ',' << fmt(report.w_hs_series[i]);
            if (!report.dist_l2_series.empty())
                out << ',' << fmt(report.dist_l2_series[i]) << ','
                    << fmt(report.dist_hs_series[i]);
            if (!report.energy_series.empty())
                out << ',' << fmt(report.energy_series[i]);
            out << '\n';
        }
    }

    {
        std::ofstream out = open("summary.txt");
        out << "# experiment summary\n\n## configuration\n" << report.config_echo;
        out << "\n## diagnostics\n";
        out << "rho_initial=" << fmt(report.rho_initial) << '\n';
        out << "l2_drift_max_rel=" << fmt(report.l2_drift_max_rel) << " ["
            << (report.l2_drift_max_rel <= 1e-8 ? "ok" : "FAIL") << "]\n";
        if (report.energy_drift_max)
            out << "energy_drift_max=" << fmt(*report.energy_drift_max) << '\n';
        out << "branch_warnings=" << report.branch_warnings << " ["
            << (report.branch_warnings == 0 ? "ok" : "check") << "]\n";
        if (cfg.params.mu > 0.0) {
            out << "theta_final=" << fmt(report.theta.theta_final) << '\n';
            out << "theta_limit=" << fmt(report.theta.theta_limit) << '\n';
            out << "theta_limit_gap=" << fmt(report.theta.limit_gap) << '\n';
            if (!report.dist_l2_series.empty())
                out << "dist_l2_final=" << fmt(report.dist_l2_series.back()) << '\n';
        } else {
            out << "theta_mean_velocity=" << fmt(report.theta.mean_velocity) << '\n';
            out << "theta_predicted_velocity="
                << fmt(report.theta.predicted_velocity) << '\n';
            out << "theta_residual=" << fmt(report.theta.residual) << '\n';
        }
        out << "\n## mode rates\n";
        if (report.exploratory)
            out << "predictions unavailable: exploratory parameters (lambda <= -1/2)\n";
        out << "mode,alpha_hat,r_squared,window_lo,window_hi,floor_hit,alpha_theory,beta_theory\n";
        for (const ModeRateRow& row : report.rates) {
            out << row.mode << ',';
            if (row.fit.degenerate)
                out << "below-floor,,";
            else
                out << fmt(row.fit.alpha_hat) << ',' << fmt(row.fit.r_squared) << ',';
            out << fmt(row.fit.t_lo) << ',' << fmt(row.fit.t_hi) << ','
                << (row.fit.floor_hit ? 1 : 0) << ',';
            if (row.prediction)
                out << fmt(row.prediction->alpha) << ',' << row.prediction->beta;
            else
                out << "n/a,n/a";
            out << '\n';
        }
    }

    {
        std::ofstream out = open("config.echo");
        out << report.config_echo;
    }
}

} // namespace slt
