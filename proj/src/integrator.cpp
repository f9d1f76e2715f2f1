#include "slt/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace slt {

namespace {

constexpr double kModulusFloor = 1e-300;
constexpr double kBranchCutWindow = 1e-6;

void require_positive_modulus(const Field& f, const char* flow) {
    for (const cplx& v : f.values()) {
        if (std::abs(v) < kModulusFloor)
            throw ZeroModulus(std::string(flow) +
                              ": grid value too close to zero for the logarithm");
    }
}

} // namespace

ModelParams::ModelParams(double lambda_, double mu_, bool exploratory_)
    : lambda(lambda_), mu(mu_), exploratory(exploratory_) {
    if (!std::isfinite(lambda) || !std::isfinite(mu))
        throw InvalidParam("model parameters must be finite");
    if (mu < 0.0) throw InvalidParam("mu must be >= 0");
    if (!(lambda > -0.5) && !exploratory)
        throw InvalidParam("lambda must be > -1/2 (pass exploratory to override)");
}

Spectrum flow_free(const Spectrum& s, double t) {
    const GridSpec& g = s.grid();
    std::vector<cplx> out(s.coefficients().begin(), s.coefficients().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double phase = -static_cast<double>(g.frequency_norm_sq(i)) * t;
        out[i] *= cplx{std::cos(phase), std::sin(phase)};
    }
    return Spectrum(g, std::move(out));
}

Field flow_free(const Field& f, double t) {
    return inverse_transform(flow_free(forward_transform(f), t));
}

Field flow_log(const Field& f, double t, double lambda) {
    require_positive_modulus(f, "flow_log");
    std::vector<cplx> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const cplx v = f.value(k);
        const double phase = -lambda * t * std::log(std::norm(v));
        out[k] = v * cplx{std::cos(phase), std::sin(phase)};
    }
    return Field(f.grid(), std::move(out));
}

Field flow_damp(const Field& f, double t, double mu, BranchStats* stats) {
    require_positive_modulus(f, "flow_damp");
    const double decay = std::exp(-mu * t);
    std::vector<cplx> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const cplx v = f.value(k);
        const double theta = std::arg(v);
        if (stats && std::numbers::pi - std::abs(theta) < kBranchCutWindow)
            ++stats->near_cut;
        const double phase = theta * decay;
        out[k] = std::abs(v) * cplx{std::cos(phase), std::sin(phase)};
    }
    return Field(f.grid(), std::move(out));
}

Field step(const Field& f, const ModelParams& params, const SplitScheme& scheme,
           BranchStats* stats, const DomainParams& domain) {
    // The subflows need the modulus bounded away from zero pointwise. The
    // mean-relative bound applies when the mean itself is resolvable;
    // zero-mean data (pure plane waves) stays admissible for the flows.
    const double mean_mod = std::abs(mean(f));
    double min_mod = std::numeric_limits<double>::infinity();
    for (const cplx& v : f.values()) min_mod = std::min(min_mod, std::abs(v));
    const double bound =
        mean_mod > domain.mean_floor ? domain.modulus_ratio * mean_mod : 0.0;
    if (min_mod <= bound || min_mod < kModulusFloor)
        throw DomainViolation("field left the admissible domain during a step");
    const double dt = scheme.dt;
    if (scheme.kind == SchemeKind::LieTrotter) {
        Field u = flow_free(f, dt);
        u = flow_log(u, dt, params.lambda);
        return flow_damp(u, dt, params.mu, stats);
    }
    Field u = flow_free(f, dt / 2.0);
    u = flow_log(u, dt / 2.0, params.lambda);
    u = flow_damp(u, dt, params.mu, stats);
    u = flow_log(u, dt / 2.0, params.lambda);
    return flow_free(u, dt / 2.0);
}

Trajectory evolve(const Field& f0, const ModelParams& params,
                  const SplitScheme& scheme, double t_max,
                  std::span<const Observer> observers,
                  int snapshot_stride, const DomainParams& domain) {
    if (!(t_max > 0.0)) throw InvalidParam("t_max must be positive");
    if (!(scheme.dt > 0.0)) throw InvalidParam("dt must be positive");
    const long steps = std::lround(t_max / scheme.dt);
    if (steps < 1) throw InvalidParam("t_max shorter than one step");

    Trajectory traj{.times = {},
                    .observations = {},
                    .snapshots = {},
                    .snapshot_stride = snapshot_stride,
                    .branch = {},
                    .final_state = f0};
    for (const Observer& obs : observers) traj.observations[obs.name] = {};

    Field state = f0;
    auto record = [&](double t, long index) {
        traj.times.push_back(t);
        for (const Observer& obs : observers)
            traj.observations[obs.name].push_back(obs.fn(state));
        if (snapshot_stride > 0 && index % snapshot_stride == 0)
            traj.snapshots.push_back(state);
    };

    auto with_time = [&](const char* what, long k) {
        std::ostringstream msg;
        msg << what << " (at t = " << static_cast<double>(k) * scheme.dt << ")";
        return msg.str();
    };

    record(0.0, 0);
    for (long k = 1; k <= steps; ++k) {
        try {
            state = step(state, params, scheme, &traj.branch, domain);
        } catch (const DomainViolation& e) {
            throw DomainViolation(with_time(e.what(), k));
        } catch (const ZeroModulus& e) {
            throw ZeroModulus(with_time(e.what(), k));
        } catch (const NonFinite& e) {
            throw NonFinite(with_time(e.what(), k));
        } catch (const Error& e) {
            throw Error(with_time(e.what(), k));
        }
        record(static_cast<double>(k) * scheme.dt, k);
    }
    traj.final_state = state;
    return traj;
}

Field plane_wave_solution(const GridSpec& grid, double rho, std::span<const int> m,
                          double theta0, double lambda, double t) {
    if (!(rho > 0.0)) throw InvalidParam("rho must be positive");
    if (static_cast<int>(m.size()) != grid.dim())
        throw InvalidParam("mode vector has wrong dimension");
    long m_norm_sq = 0;
    for (int mi : m) m_norm_sq += static_cast<long>(mi) * mi;
    const double omega = static_cast<double>(m_norm_sq) + 2.0 * lambda * std::log(rho);
    const cplx amp = rho * std::exp(cplx{0.0, theta0 - omega * t});

    std::vector<cplx> values(grid.size());
    std::vector<int> idx(static_cast<std::size_t>(grid.dim()));
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        grid.unflatten(flat, idx.data());
        double mx = 0.0;
        for (int axis = 0; axis < grid.dim(); ++axis)
            mx += m[axis] * grid.coord(idx[axis]);
        values[flat] = amp * std::exp(cplx{0.0, mx});
    }
    return Field(grid, std::move(values));
}

Field plane_wave_solution(const GridSpec& grid, double rho, int m, double theta0,
                          double lambda, double t) {
    return plane_wave_solution(grid, rho, std::span<const int>(&m, 1), theta0,
                               lambda, t);
}

cplx constant_solution(double rho, double lambda, double mu) {
    if (!(rho > 0.0)) throw InvalidParam("rho must be positive");
    if (!(mu > 0.0)) throw InvalidParam("constant_solution requires mu > 0");
    return rho * std::exp(cplx{0.0, -2.0 * lambda * std::log(rho) / mu});
}

Field gauge_transform(const Field& f, double kappa, const ModelParams& params,
                      double t) {
    if (!(kappa > 0.0)) throw InvalidParam("kappa must be positive");
    if (!(params.mu > 0.0))
        throw InvalidParam("gauge transform requires mu > 0 (use scaling_transform)");
    const double phase = -2.0 * (params.lambda / params.mu) * std::log(kappa) *
                         (1.0 - std::exp(-params.mu * t));
    const cplx factor = kappa * std::exp(cplx{0.0, phase});
    std::vector<cplx> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = factor * f.value(k);
    return Field(f.grid(), std::move(out));
}

Field scaling_transform(const Field& f, double kappa, double lambda, double t) {
    if (!(kappa > 0.0)) throw InvalidParam("kappa must be positive");
    const cplx factor = kappa * std::exp(cplx{0.0, -2.0 * t * lambda * std::log(kappa)});
    std::vector<cplx> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = factor * f.value(k);
    return Field(f.grid(), std::move(out));
}

Field galilean_transform(const Field& f, std::span<const int> v, double t) {
    const GridSpec& g = f.grid();
    if (static_cast<int>(v.size()) != g.dim())
        throw InvalidParam("velocity vector has wrong dimension");
    long v_norm_sq = 0;
    for (int vi : v) v_norm_sq += static_cast<long>(vi) * vi;

    // Spatial shift by 2 v t, spectrally exact for trigonometric data.
    Spectrum s = forward_transform(f);
    std::vector<cplx> coeffs(s.coefficients().begin(), s.coefficients().end());
    std::vector<int> idx(static_cast<std::size_t>(g.dim()));
    for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
        g.unflatten(flat, idx.data());
        double jv = 0.0;
        for (int axis = 0; axis < g.dim(); ++axis)
            jv += static_cast<double>(g.frequency(idx[axis])) * v[axis];
        coeffs[flat] *= std::exp(cplx{0.0, -2.0 * jv * t});
    }
    Field shifted = inverse_transform(Spectrum(g, std::move(coeffs)));

    // Carrier e^{i v.x} and the global phase e^{-i |v|^2 t}.
    const cplx global = std::exp(cplx{0.0, -static_cast<double>(v_norm_sq) * t});
    std::vector<cplx> out(shifted.size());
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        g.unflatten(flat, idx.data());
        double vx = 0.0;
        for (int axis = 0; axis < g.dim(); ++axis)
            vx += static_cast<double>(v[axis]) * g.coord(idx[axis]);
        out[flat] = shifted.value(flat) * global * std::exp(cplx{0.0, vx});
    }
    return Field(g, std::move(out));
}

Field galilean_transform(const Field& f, int v, double t) {
    return galilean_transform(f, std::span<const int>(&v, 1), t);
}

double energy(const Field& f, double lambda) {
    require_positive_modulus(f, "energy");
    Spectrum s = forward_transform(f);
    double grad = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        grad += static_cast<double>(s.grid().frequency_norm_sq(i)) *
                std::norm(s.coefficient_at(i));
    double potential = 0.0;
    for (const cplx& v : f.values()) {
        const double sq = std::norm(v);
        potential += sq * (std::log(sq) - 1.0);
    }
    potential *= lambda / static_cast<double>(f.size());
    return grad + potential;
}

} // namespace slt
