// Command-line front end: simulations, per-mode linear analysis, small
// divisor scans, and the built-in verification suites.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "slt/checks.hpp"
#include "slt/config.hpp"
#include "slt/resonance.hpp"

namespace {

using namespace slt;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerification = 3;

std::string default_output_dir() {
    const char* env = std::getenv("SLTORUS_OUTPUT_DIR");
    return env ? env : ".";
}

struct SimulateOptions {
    std::string preset;
    std::string config_file;
    std::string overrides; // accumulated key=value lines
    std::string output;
};

int run_simulate(const SimulateOptions& opts) {
    ExperimentConfig cfg;
    if (!opts.preset.empty()) cfg = preset_config(opts.preset);
    if (cfg.output_dir.empty()) cfg.output_dir = default_output_dir();
    if (!opts.config_file.empty()) cfg = load_config_file(opts.config_file, cfg);
    if (!opts.overrides.empty()) cfg = parse_config_text(opts.overrides, cfg);
    if (!opts.output.empty()) cfg.output_dir = opts.output;

    const Report report = run_experiment(cfg);
    write_outputs(report, cfg);

    std::printf("wrote %s/{actions.csv,diagnostics.csv,summary.txt,config.echo}\n",
                cfg.output_dir.c_str());
    std::printf("rho_initial %.6f  l2 drift %.3e  branch warnings %ld\n",
                report.rho_initial, report.l2_drift_max_rel, report.branch_warnings);
    for (const ModeRateRow& row : report.rates) {
        if (row.fit.degenerate) {
            std::printf("mode %d: fit window unusable (floored or out of range)\n",
                        row.mode);
            continue;
        }
        std::printf("mode %d: alpha_hat %.5f (window [%.1f, %.1f], r2 %.4f)",
                    row.mode, row.fit.alpha_hat, row.fit.t_lo, row.fit.t_hi,
                    row.fit.r_squared);
        if (row.prediction)
            std::printf("  alpha_theory %.5f beta %d", row.prediction->alpha,
                        row.prediction->beta);
        std::printf("\n");
    }
    return kExitOk;
}

int run_analyze(double lambda, double mu, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi < n_lo)
        throw InvalidParam("analyze requires 1 <= n-lo <= n-hi");
    std::printf("# lambda %.6g mu %.6g\n", lambda, mu);
    if (mu == 0.0) {
        std::printf("%4s %14s\n", "n", "Omega_n");
        for (int n = n_lo; n <= n_hi; ++n)
            std::printf("%4d %14.8f\n", n, frequency(n, lambda));
        return kExitOk;
    }
    std::printf("%4s %-12s %26s %26s %10s %5s\n", "n", "regime", "eigenvalue_1",
                "eigenvalue_2", "alpha_n", "beta");
    for (int n = n_lo; n <= n_hi; ++n) {
        const BlockDiagonalization d = diagonalize(block_matrix(n, lambda, mu));
        const char* regime = d.regime.tag == RegimeTag::Oscillatory ? "oscillatory"
                             : d.regime.tag == RegimeTag::Overdamped ? "overdamped"
                                                                     : "jordan";
        const RatePrediction rate = mode_rate(n, lambda, mu);
        std::printf("%4d %-12s %13.6f%+13.6fi %13.6f%+13.6fi %10.6f %5d\n", n,
                    regime, d.D.a.real(), d.D.a.imag(), d.D.d.real(), d.D.d.imag(),
                    rate.alpha, rate.beta);
    }
    const auto [alpha, beta] = global_rate(lambda, mu);
    std::printf("global: alpha %.6f beta %d\n", alpha, beta);
    return kExitOk;
}

int run_scan(double lambda, int r, int n_max, const std::string& output) {
    const ScanResult result = scan(lambda, r, n_max);
    namespace fs = std::filesystem;
    const fs::path dir =
        output.empty() ? fs::path(default_output_dir()) : fs::path(output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string());
    const fs::path csv = dir / "scan.csv";
    std::ofstream out(csv, std::ios::binary);
    if (!out) throw IoError("cannot open " + csv.string());
    write_scan_csv(result, out);

    std::printf("# lambda %.6g r %d n_max %d\n", lambda, r, n_max);
    std::printf("combinations %ld  min |divisor| %.6e  (m = {", result.combinations,
                result.min_abs);
    for (std::size_t i = 0; i < result.min_record.m_indices.size(); ++i)
        std::printf("%s%d", i ? "," : "", result.min_record.m_indices[i]);
    std::printf("}, n = {");
    for (std::size_t i = 0; i < result.min_record.n_indices.size(); ++i)
        std::printf("%s%d", i ? "," : "", result.min_record.n_indices[i]);
    std::printf("})\n");
    std::printf("fit over mu3 >= 2: gamma %.6e alpha %.4f\n", result.gamma_fit,
                result.alpha_fit);
    std::printf("wrote %s\n", csv.string().c_str());
    return kExitOk;
}

bool check_line(const char* name, bool ok, const char* detail_fmt, double value) {
    std::printf("[%s] %-28s ", ok ? "PASS" : "FAIL", name);
    std::printf(detail_fmt, value);
    std::printf("\n");
    return ok;
}

int run_verify(const std::string& suite) {
    bool all = true;
    const bool do_blocks = suite == "blocks" || suite == "all";
    const bool do_conservation = suite == "conservation" || suite == "all";
    const bool do_invariance = suite == "invariance" || suite == "all";
    const bool do_order = suite == "order" || suite == "all";
    if (!do_blocks && !do_conservation && !do_invariance && !do_order)
        throw InvalidParam("unknown suite '" + suite +
                           "' (conservation|invariance|order|blocks|all)");

    if (do_blocks) {
        const BlockScanResult b = block_algebra_scan(1000, 100, 42);
        all &= check_line("blocks: P_inv A P = D", b.max_diag_residual <= 1e-10,
                          "max residual %.2e", b.max_diag_residual);
        all &= check_line("blocks: P P_inv = I", b.max_inverse_residual <= 1e-10,
                          "max residual %.2e", b.max_inverse_residual);
        all &= check_line("blocks: det P = 1 (osc.)", b.max_det_gap <= 1e-10,
                          "max gap %.2e", b.max_det_gap);
        all &= check_line("blocks: closed-form eigenvalues",
                          b.max_eigen_gap <= 1e-10, "max gap %.2e", b.max_eigen_gap);
        all &= check_line("blocks: S^T J S = J", b.max_symplectic_residual <= 1e-12,
                          "max residual %.2e", b.max_symplectic_residual);
        std::printf("[info] worst conditioning %.2f (n=%d, lambda=%.4f, mu=%.4f);"
                    " the change of basis degenerates near the regime boundary\n",
                    b.max_cond, b.max_cond_n, b.max_cond_lambda, b.max_cond_mu);
    }
    if (do_conservation) {
        const double drift = l2_conservation_drift(preset_config("relax"));
        all &= check_line("conservation: L2 drift", drift <= 1e-8,
                          "max relative drift %.2e", drift);
    }
    if (do_invariance) {
        const CovarianceResult c = covariance_checks(128, 1e-3, 1.0);
        all &= check_line("invariance: gauge", c.gauge_gap <= 1e-5, "L2 gap %.2e",
                          c.gauge_gap);
        all &= check_line("invariance: scaling", c.scaling_gap <= 1e-5,
                          "L2 gap %.2e", c.scaling_gap);
        all &= check_line("invariance: galilean", c.galilean_gap <= 1e-5,
                          "L2 gap %.2e", c.galilean_gap);
    }
    if (do_order) {
        const double dts[] = {2e-2, 1e-2, 5e-3};
        const OrderResult o = splitting_order_study(128, 1.0, dts);
        all &= check_line("order: Lie-Trotter",
                          std::abs(o.lie_order - 1.0) <= 0.3, "observed %.3f",
                          o.lie_order);
        all &= check_line("order: Strang", std::abs(o.strang_order - 2.0) <= 0.3,
                          "observed %.3f", o.strang_order);
    }
    return all ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral simulator and stability analysis for the damped "
                 "logarithmic Schrodinger equation on the torus"};
    app.require_subcommand(1);

    SimulateOptions sim;
    const std::vector<std::pair<std::string, std::string>> key_flags = {
        {"--lambda", "lambda"},    {"--mu", "mu"},
        {"--K", "K"},              {"--dt", "dt"},
        {"--t-max", "t_max"},      {"--scheme", "scheme"},
        {"--initial", "initial"},  {"--rho", "rho"},
        {"--m", "m"},              {"--amplitude", "amplitude"},
        {"--modes", "modes"},      {"--track-modes", "track_modes"},
        {"--fit-lo", "fit_lo"},    {"--fit-hi", "fit_hi"},
        {"--seed", "seed"},        {"--sobolev-s", "sobolev_s"},
        {"--coeffs", "coeffs"},    {"--mean-floor", "mean_floor"},
        {"--modulus-ratio", "modulus_ratio"},
    };

    auto* simulate = app.add_subcommand("simulate", "run a configured experiment");
    simulate->add_option("--preset", sim.preset,
                         "named preset: relax|hamiltonian|overdamped|focusing");
    simulate->add_option("--config", sim.config_file, "key=value config file");
    simulate->add_option("--output", sim.output, "output directory");
    for (const auto& [flag, key] : key_flags) {
        simulate->add_option_function<std::string>(
            flag,
            [&sim, key = key](const std::string& value) {
                sim.overrides += key + "=" + value + "\n";
            },
            "override config key " + key);
    }
    simulate->add_flag_callback(
        "--exploratory", [&sim] { sim.overrides += "exploratory=1\n"; },
        "allow lambda <= -1/2 (predictions disabled)");
    simulate->add_flag_callback(
        "--energy", [&sim] { sim.overrides += "observe_energy=1\n"; },
        "record the energy observer");
    simulate->add_flag_callback(
        "--strang", [&sim] { sim.overrides += "scheme=strang\n"; },
        "use the symmetric splitting");

    double lambda = 0.5, mu = 0.0;
    int n_lo = 1, n_hi = 10;
    auto* analyze = app.add_subcommand("analyze", "per-mode linear analysis table");
    analyze->add_option("--lambda", lambda, "nonlinearity coefficient")->required();
    analyze->add_option("--mu", mu, "damping coefficient")->required();
    analyze->add_option("--n-lo", n_lo, "first block index");
    analyze->add_option("--n-hi", n_hi, "last block index");

    double scan_lambda = 0.5;
    int scan_r = 4, scan_n_max = 30;
    std::string scan_output;
    auto* scan_cmd = app.add_subcommand("scan", "small-divisor scan");
    scan_cmd->add_option("--lambda", scan_lambda, "nonlinearity coefficient")
        ->required();
    scan_cmd->add_option("--r", scan_r, "maximum combination size p+q")->required();
    scan_cmd->add_option("--n-max", scan_n_max, "largest index")->required();
    scan_cmd->add_option("--output", scan_output, "output directory");

    std::string suite = "all";
    auto* verify = app.add_subcommand(
        "verify", "run a verification suite: conservation|invariance|order|blocks|all");
    verify->add_option("suite", suite, "suite name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (analyze->parsed()) return run_analyze(lambda, mu, n_lo, n_hi);
        if (scan_cmd->parsed())
            return run_scan(scan_lambda, scan_r, scan_n_max, scan_output);
        if (verify->parsed()) return run_verify(suite);
    } catch (const InvalidParam& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}
