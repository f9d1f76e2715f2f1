#ifndef SLT_EXPERIMENTS_HPP
#define SLT_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "slt/blocks.hpp"
#include "slt/integrator.hpp"

namespace slt {

// Initial-condition descriptor.
//   InvCos:       1 / (1 + 0.2 cos x)
//   PlaneWave:    rho e^{i m x} (1 + amplitude * sum_k e^{i k x + i phi_k}),
//                 phases zero unless random_phases (then drawn from seed)
//   Coefficients: explicit Fourier coefficients
struct InitialCondition {
    enum class Kind { InvCos, PlaneWave, Coefficients };
    Kind kind = Kind::InvCos;

    double rho = 1.0;
    int m = 0;
    double amplitude = 0.0;
    std::vector<int> perturbation_modes;
    bool random_phases = false;

    std::vector<std::pair<int, cplx>> coefficients; // (frequency, value)
};

struct ExperimentConfig {
    ModelParams params;
    int grid_points = 128;   // K, d = 1
    SplitScheme scheme;
    double t_max = 100.0;
    InitialCondition initial;
    std::vector<int> track_modes = {0, 1, 2, 3, 4};
    double fit_lo = 10.0;
    double fit_hi = 60.0;
    double sobolev_s = 1.0;
    bool observe_energy = false; // defaulted on for mu = 0 in presets
    std::string output_dir;
    unsigned long seed = 0;
    long step_budget = 10'000'000;
    DomainParams domain;

    GridSpec grid() const { return GridSpec(1, grid_points); }
};

struct ActionSeries {
    int mode;
    std::vector<double> times;
    std::vector<double> amplitudes;
};

struct RateFit {
    int mode = 0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double alpha_hat = 0.0;
    double r_squared = 0.0;
    bool floor_hit = false;
    bool degenerate = false; // too few samples above the floor to fit
};

struct ModeRateRow {
    int mode;
    RateFit fit;
    std::optional<RatePrediction> prediction; // absent in exploratory runs
};

struct ThetaDriftStats {
    std::vector<double> theta_unwrapped;
    double mean_velocity = 0.0;     // least-squares slope of theta(t)
    double predicted_velocity = 0.0; // -( |m|^2 + 2 lambda log rho ), mu = 0
    double residual = 0.0;           // |measured - predicted|, mu = 0
    double theta_final = 0.0;
    double theta_limit = 0.0;        // -2 lambda log(rho)/mu, mu > 0
    double limit_gap = 0.0;          // |theta_final - theta_limit|, mu > 0
};

struct Report {
    std::string config_echo;
    bool exploratory = false;
    double rho_initial = 0.0; // measured L2 norm of the initial field

    std::vector<ActionSeries> actions;
    std::vector<ModeRateRow> rates;

    std::vector<double> times;
    std::vector<double> l2_series;
    std::vector<double> a_series;
    std::vector<double> w_l2_series;
    std::vector<double> w_hs_series;
    std::vector<double> dist_l2_series; // to the damped limit, mu > 0
    std::vector<double> dist_hs_series;
    std::vector<double> energy_series;  // when observed

    double l2_drift_max_rel = 0.0;
    std::optional<double> energy_drift_max;
    ThetaDriftStats theta;
    long branch_warnings = 0;
};

Field make_initial(const InitialCondition& init, const GridSpec& grid,
                   unsigned long seed);

Report run_experiment(const ExperimentConfig& cfg);

// Ordinary least squares of log(amplitude) against time on [t_lo, t_hi].
// Samples at or below the floor are dropped; if any are dropped the window
// is shrunk to the part before the first floored sample and floor_hit is
// set. Throws DegenerateWindow when fewer than 10 samples remain.
RateFit fit_rate(const ActionSeries& series, double t_lo, double t_hi,
                 double floor = 1e-13);

// Exact evolution |xi_j(t)| of the 2x2 linear block for n = j^2, sampled
// every dt. Uses the closed-form diagonalization (or the Jordan
// exponential inside the tolerance band); independent of the PDE stepper.
ActionSeries linearized_oracle(int j, const ModelParams& params, cplx xi0,
                               cplx eta0, double t_max, double dt = 1e-2);

struct RateComparisonRow {
    int mode;
    double alpha_hat;
    double alpha_theory;
    double relative_deviation;
    bool applicable; // false for mu = 0 (no decay predicted)
};

std::vector<RateComparisonRow> compare_rates(const Report& report);

ThetaDriftStats theta_drift(const std::vector<double>& times,
                            const std::vector<double>& theta_wrapped,
                            const ModelParams& params, long m_norm_sq,
                            double rho);

// actions.csv, diagnostics.csv, summary.txt and a re-runnable config echo,
// written under cfg.output_dir.
void write_outputs(const Report& report, const ExperimentConfig& cfg);

// Serialization shared by write_outputs and the command-line front end.
std::string echo_config(const ExperimentConfig& cfg);

} // namespace slt

#endif
