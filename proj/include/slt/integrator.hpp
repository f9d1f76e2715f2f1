#ifndef SLT_INTEGRATOR_HPP
#define SLT_INTEGRATOR_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slt/field.hpp"

namespace slt {

enum class SchemeKind { LieTrotter, Strang };

struct SplitScheme {
    SchemeKind kind = SchemeKind::LieTrotter;
    double dt = 1e-2;
};

// Equation parameters. lambda > -1/2 is required by the stability theory;
// values outside that range run only with the exploratory flag.
struct ModelParams {
    double lambda = 0.0;
    double mu = 0.0;
    bool exploratory = false;

    ModelParams() = default;
    ModelParams(double lambda_, double mu_, bool exploratory_ = false);

    cplx z() const { return {lambda, -mu / 2.0}; } // lambda + mu/(2i)
};

// Count of grid points whose phase passed within 1e-6 of the +-pi branch
// cut during damping flows.
struct BranchStats {
    long near_cut = 0;
};

// Exact flow of i d/dt psi = -Laplacian psi: coefficient j picks up
// e^{-i |j|^2 t}.
Spectrum flow_free(const Spectrum& s, double t);
Field flow_free(const Field& f, double t);

// Exact flow of i d/dt v = lambda v log|v|^2:
// v(t) = v0 e^{-i lambda t log|v0|^2}.
Field flow_log(const Field& f, double t, double lambda);

// Exact flow of i d/dt w = (mu/2i) w log(w/w*): pointwise
// w(t) = |w0| e^{i arg(w0) e^{-mu t}}, principal argument.
Field flow_damp(const Field& f, double t, double mu, BranchStats* stats = nullptr);

// One splitting step. LieTrotter: C(dt) B(dt) A(dt).
// Strang: A(dt/2) B(dt/2) C(dt) B(dt/2) A(dt/2).
Field step(const Field& f, const ModelParams& params, const SplitScheme& scheme,
           BranchStats* stats = nullptr, const DomainParams& domain = {});

struct Observer {
    std::string name;
    std::vector<std::string> columns;
    std::function<std::vector<double>(const Field&)> fn;
};

struct Trajectory {
    std::vector<double> times;
    // Observer outputs, one row per time, keyed by observer name.
    std::map<std::string, std::vector<std::vector<double>>> observations;
    std::vector<Field> snapshots; // every snapshot_stride steps when > 0
    int snapshot_stride = 0;
    BranchStats branch;
    Field final_state;
};

Trajectory evolve(const Field& f0, const ModelParams& params,
                  const SplitScheme& scheme, double t_max,
                  std::span<const Observer> observers,
                  int snapshot_stride = 0, const DomainParams& domain = {});

// nu_m(t,x) = rho e^{i theta0} e^{i m.x} e^{-i (|m|^2 + 2 lambda log rho) t},
// the exact plane wave of the undamped equation.
Field plane_wave_solution(const GridSpec& grid, double rho, std::span<const int> m,
                          double theta0, double lambda, double t);
Field plane_wave_solution(const GridSpec& grid, double rho, int m, double theta0,
                          double lambda, double t);

// The asymptotic constant rho e^{-2 i lambda log(rho)/mu} of the damped flow.
cplx constant_solution(double rho, double lambda, double mu);

// Amplitude-scaling symmetry of the damped equation: maps the solution with
// initial datum psi0 to the one with initial datum kappa psi0 at time t.
Field gauge_transform(const Field& f, double kappa, const ModelParams& params,
                      double t);

// Amplitude-scaling symmetry of the undamped equation.
Field scaling_transform(const Field& f, double kappa, double lambda, double t);

// Boost by integer v: shifts Fourier support by +v and relabels the moving
// frame, an exact symmetry on the torus grid. Applied to the plane wave at
// mode m with v = -m it yields the constant-mode solution.
Field galilean_transform(const Field& f, std::span<const int> v, double t);
Field galilean_transform(const Field& f, int v, double t);

// Conserved energy of the undamped flow:
// ||grad psi||^2 + lambda <|psi|^2 (log|psi|^2 - 1)>.
double energy(const Field& f, double lambda);

} // namespace slt

#endif
