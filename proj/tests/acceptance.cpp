// Acceptance suite: one check per shipped guarantee, each printed as a
// single pass/fail line with the measured values. Exits with the number of
// failed checks.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "slt/checks.hpp"
#include "slt/config.hpp"
#include "slt/experiments.hpp"
#include "slt/resonance.hpp"

using namespace slt;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %02d %-24s %s\n", ok ? "PASS" : "FAIL", index, name,
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

void c01_block_algebra() {
    const BlockScanResult b = block_algebra_scan(1000, 100, 42);
    report(1, "block identities",
           b.max_diag_residual <= 1e-10 && b.max_inverse_residual <= 1e-10 &&
               b.max_det_gap <= 1e-12,
           fmt("P_inv A P - D %.2e, P P_inv - I %.2e, det gap %.2e (%ld blocks)",
               b.max_diag_residual, b.max_inverse_residual, b.max_det_gap,
               b.blocks));
    report(1, "block eigenvalues", b.max_eigen_gap <= 1e-10,
           fmt("closed form vs generic solver, max gap %.2e", b.max_eigen_gap));
    report(1, "block symplectic", b.max_symplectic_residual <= 1e-12,
           fmt("S^T J S - J max residual %.2e", b.max_symplectic_residual));
    // The claimed bound fails near the regime boundary, where the
    // eigenvectors collapse and no basis keeps the conditioning small; the
    // worst sampled block is reported as measured.
    report(1, "block conditioning", b.max_cond <= 2.0 + 1e-9,
           fmt("max cond %.2f at n=%d lambda=%.4f mu=%.4f (bound 2+1e-9)",
               b.max_cond, b.max_cond_n, b.max_cond_lambda, b.max_cond_mu));
}

void c02_l2_conservation() {
    const double drift = l2_conservation_drift(preset_config("relax"));
    report(2, "L2 conservation", drift <= 1e-8,
           fmt("max relative drift %.2e over 1e4 steps (bound 1e-8)", drift));
}

void c03_relaxation_rate() {
    const ExperimentConfig cfg = preset_config("relax");
    const Report r = run_experiment(cfg);

    const ModeRateRow& mode1 = r.rates.front();
    const double alpha_theory = 1.0; // mu/2
    const double rate_dev = std::abs(mode1.fit.alpha_hat - alpha_theory);
    report(3, "relaxation rate", rate_dev <= 0.1,
           fmt("mode-1 alpha %.4f vs %.1f (window [%.0f, %.1f], floor %s)",
               mode1.fit.alpha_hat, alpha_theory, mode1.fit.t_lo, mode1.fit.t_hi,
               mode1.fit.floor_hit ? "hit" : "clear"));

    // Mode-0 constancy after the transient (the remainder redistributes
    // into the mean during the first few units, by Parseval).
    double a_lo = 1e300, a_hi = 0.0;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        if (r.times[i] < cfg.fit_lo) continue;
        a_lo = std::min(a_lo, r.a_series[i]);
        a_hi = std::max(a_hi, r.a_series[i]);
    }
    const double spread = (a_hi - a_lo) / a_hi;
    report(3, "mode-0 constancy", spread <= 1e-3,
           fmt("relative spread %.2e on t >= %.0f (bound 1e-3)", spread,
               cfg.fit_lo));

    const double dist = r.dist_l2_series.back();
    report(3, "terminal distance", dist <= 1e-3,
           fmt("|psi(100) - limit|_L2 = %.3e (rho %.5f, bound 1e-3)", dist,
               r.rho_initial));
}

void c04_overdamped_rate() {
    ExperimentConfig cfg;
    cfg.params = ModelParams(0.5, 8.0);
    cfg.grid_points = 128;
    cfg.scheme = SplitScheme{SchemeKind::LieTrotter, 1e-2};
    cfg.t_max = 100.0;
    cfg.initial.kind = InitialCondition::Kind::PlaneWave;
    cfg.initial.rho = 1.0;
    cfg.initial.m = 0;
    cfg.initial.amplitude = 1e-3;
    cfg.initial.perturbation_modes = {1};
    cfg.track_modes = {1, 2, 3, 4};
    const Report r = run_experiment(cfg);

    const double alpha1 = 4.0 - std::sqrt(14.0);
    const RateFit& fit1 = r.rates.front().fit;
    report(4, "overdamped rate", std::abs(fit1.alpha_hat / alpha1 - 1.0) <= 0.10,
           fmt("mode-1 alpha %.5f vs %.5f (10%% band)", fit1.alpha_hat, alpha1));

    const ActionSeries oracle = linearized_oracle(1, cfg.params, 1e-3, 0.0, 100.0);
    const RateFit oracle_fit = fit_rate(oracle, cfg.fit_lo, cfg.fit_hi);
    report(4, "oracle agreement",
           std::abs(fit1.alpha_hat / oracle_fit.alpha_hat - 1.0) <= 0.05,
           fmt("pde %.5f vs block oracle %.5f (5%% band)", fit1.alpha_hat,
               oracle_fit.alpha_hat));

    // Higher modes are reported against both candidate rates with no hard
    // bound: the uniform prediction mu/2 = 4 versus multiples of the slow
    // first-mode rate fed by the nonlinear cascade.
    bool have_rows = true;
    for (int mode : {2, 3, 4}) {
        const ModeRateRow* row = nullptr;
        for (const ModeRateRow& candidate : r.rates)
            if (candidate.mode == mode) row = &candidate;
        if (!row) {
            have_rows = false;
            continue;
        }
        if (row->fit.degenerate)
            std::printf("        mode %d: below the 1e-13 floor on the window "
                        "(candidates %.3f / %.4f)\n",
                        mode, 4.0, mode * alpha1);
        else
            std::printf("        mode %d: measured %.4f, candidates %.3f / %.4f\n",
                        mode, row->fit.alpha_hat, 4.0, mode * alpha1);
    }
    report(4, "cascade report", have_rows, "modes 2-4 reported above");
}

void c05_jordan_boundary() {
    const double mu = 2.0 * std::sqrt(2.0);
    const Regime regime = classify(1, 0.5, mu);
    const auto [alpha, beta] = global_rate(0.5, mu);
    report(5, "jordan classification",
           regime.tag == RegimeTag::Jordan &&
               std::abs(alpha - std::sqrt(2.0)) <= 1e-12 && beta == 1,
           fmt("regime %s, global (%.6f, %d)",
               regime.tag == RegimeTag::Jordan ? "jordan" : "other", alpha, beta));

    const ActionSeries s = linearized_oracle(1, ModelParams(0.5, mu), 1.0, 1.0, 30.0);
    std::vector<double> t, ratio;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        t.push_back(s.times[i]);
        ratio.push_back(s.amplitudes[i] * std::exp(std::sqrt(2.0) * s.times[i]));
    }
    double sx = 0, sy = 0;
    const double n = static_cast<double>(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        sx += t[i];
        sy += ratio[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        sxx += (t[i] - mx) * (t[i] - mx);
        sxy += (t[i] - mx) * (ratio[i] - my);
        syy += (ratio[i] - my) * (ratio[i] - my);
    }
    const double slope = sxy / sxx;
    const double r2 = 1.0 - (syy - slope * sxy) / syy;
    report(5, "jordan linear growth", r2 >= 0.99 && slope > 0.0,
           fmt("|xi| e^{sqrt2 t} vs 1 + c t: slope %.3f, r2 %.6f", slope, r2));
}

void c06_hamiltonian_stability() {
    const Report r = run_experiment(preset_config("hamiltonian"));
    double w_hi = 0.0;
    for (double w : r.w_hs_series) w_hi = std::max(w_hi, w);
    const double growth = w_hi / r.w_hs_series.front();
    report(6, "action near-conservation", growth <= 3.0,
           fmt("sup |w|_H1 / |w(0)|_H1 = %.3f over T=100 (bound 3)", growth));

    auto residual = [](double eps) {
        ExperimentConfig c;
        c.params = ModelParams(0.5, 0.0);
        c.grid_points = 128;
        c.scheme = SplitScheme{SchemeKind::LieTrotter, 1e-2};
        c.t_max = 20.0;
        c.initial.kind = InitialCondition::Kind::PlaneWave;
        c.initial.rho = 1.0;
        c.initial.m = 0;
        c.initial.amplitude = eps;
        c.initial.perturbation_modes = {1};
        c.track_modes = {0, 1};
        return run_experiment(c).theta.residual;
    };
    const double r1 = residual(1e-2);
    const double r2 = residual(5e-3);
    const double ratio = r1 / r2;
    report(6, "phase drift scaling", ratio >= 2.5 && ratio <= 6.0,
           fmt("residual %.3e -> %.3e under eps halving, ratio %.3f", r1, r2,
               ratio));
}

void c07_symmetry_covariance() {
    const CovarianceResult c = covariance_checks(128, 1e-3, 1.0);
    report(7, "symmetry covariance",
           c.gauge_gap <= 1e-5 && c.scaling_gap <= 1e-5 && c.galilean_gap <= 1e-5,
           fmt("gauge %.2e, scaling %.2e, galilean %.2e (bound 1e-5)", c.gauge_gap,
               c.scaling_gap, c.galilean_gap));
}

void c08_splitting_order() {
    const double dts[] = {2e-2, 1e-2, 5e-3};
    const OrderResult o = splitting_order_study(128, 1.0, dts);
    report(8, "splitting order",
           std::abs(o.lie_order - 1.0) <= 0.3 && std::abs(o.strang_order - 2.0) <= 0.3,
           fmt("Lie-Trotter %.3f (1 +- 0.3), Strang %.3f (2 +- 0.3)", o.lie_order,
               o.strang_order));
}

void c09_small_divisors() {
    long anomalies = 0, cancelling_nonzero = 0, mismatches = 0;
    for (int i = 0; i < 20; ++i) {
        const double lambda = 0.1 + 0.9 * static_cast<double>(i) / 19.0;
        const ResonanceCheckResult rc = resonance_check(lambda, 4, 30);
        anomalies += rc.anomalies;
        cancelling_nonzero += rc.cancelling_nonzero;
        if (!rc.exact_match) ++mismatches;
        if (rc.anomalies > 0)
            std::printf("        lambda %.4f: %ld near-zero non-cancelling "
                        "divisors reported\n",
                        lambda, rc.anomalies);
    }
    report(9, "small divisors", cancelling_nonzero == 0 && mismatches == 0,
           fmt("20 lambdas: cancelling all exact zeros, %ld brute-force "
               "mismatches, %ld anomalies reported",
               mismatches, anomalies));
}

void c10_focusing_tails() {
    ExperimentConfig cfg = preset_config("focusing");
    cfg.track_modes = {0, 1, 2, 3, 4};
    bool completed = true;
    double spread0 = 1.0, spread1 = 1.0;
    std::string detail;
    try {
        const Report r = run_experiment(cfg);
        auto tail_spread = [&](int mode) {
            const ActionSeries& s = r.actions[static_cast<std::size_t>(mode)];
            double lo = 1e300, hi = 0.0;
            for (std::size_t i = 0; i < s.times.size(); ++i) {
                if (s.times[i] < 80.0) continue;
                lo = std::min(lo, s.amplitudes[i]);
                hi = std::max(hi, s.amplitudes[i]);
            }
            return (hi - lo) / hi;
        };
        spread0 = tail_spread(0);
        spread1 = tail_spread(1);
        detail = fmt("run completed; tail spreads mode0 %.2e mode1 %.2e on "
                     "t in [80,100] (bound 1e-2)",
                     spread0, spread1);
    } catch (const Error& e) {
        completed = false;
        detail = std::string("run aborted: ") + e.what();
    }
    report(10, "focusing tails", completed && spread0 <= 1e-2 && spread1 <= 1e-2,
           detail);
}

} // namespace

int main() {
    c01_block_algebra();
    c02_l2_conservation();
    c03_relaxation_rate();
    c04_overdamped_rate();
    c05_jordan_boundary();
    c06_hamiltonian_stability();
    c07_symmetry_covariance();
    c08_splitting_order();
    c09_small_divisors();
    c10_focusing_tails();
    std::printf("%d check(s) failed\n", failures);
    return failures;
}
