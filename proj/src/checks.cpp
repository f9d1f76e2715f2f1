#include "slt/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "slt/config.hpp"
#include "slt/resonance.hpp"

namespace slt {

namespace {

double residual(const Mat2& m) { return m.max_abs(); }

// Minimal total pairing distance between two eigenvalue pairs.
double eigen_set_gap(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
    const double direct = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
    const double swapped = std::max(std::abs(a[0] - b[1]), std::abs(a[1] - b[0]));
    return std::min(direct, swapped);
}

} // namespace

std::array<cplx, 2> generic_eigenvalues(const Mat2& m) {
    const cplx tr = m.trace();
    const cplx root = std::sqrt(tr * tr - 4.0 * m.det());
    return {(tr - root) / 2.0, (tr + root) / 2.0};
}

BlockScanResult block_algebra_scan(int n_max, int draws, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lambda_dist(-0.49, 2.0);
    std::uniform_real_distribution<double> mu_dist(0.0, 10.0);

    const Mat2 j{0.0, 1.0, -1.0, 0.0};
    BlockScanResult result;
    for (int draw = 0; draw < draws; ++draw) {
        const double lambda = lambda_dist(rng);
        double mu = mu_dist(rng);
        if (mu == 0.0) mu = 1e-3; // open interval (0, 10]
        for (int n = 1; n <= n_max; ++n) {
            const ModeBlock block = block_matrix(n, lambda, mu);
            const BlockDiagonalization diag = diagonalize(block);
            ++result.blocks;

            result.max_diag_residual =
                std::max(result.max_diag_residual,
                         residual(diag.P_inv * block.entries * diag.P - diag.D));
            result.max_inverse_residual =
                std::max(result.max_inverse_residual,
                         residual(diag.P * diag.P_inv - Mat2::identity()));
            if (diag.regime.tag == RegimeTag::Oscillatory)
                result.max_det_gap =
                    std::max(result.max_det_gap, std::abs(diag.P.det() - 1.0));

            const double dn = static_cast<double>(n);
            const cplx delta =
                std::sqrt(cplx{dn * dn + 2.0 * lambda * dn - mu * mu / 4.0, 0.0});
            const cplx center{0.0, -mu / 2.0};
            result.max_eigen_gap = std::max(
                result.max_eigen_gap,
                eigen_set_gap(generic_eigenvalues(block.entries),
                              {center - delta, center + delta}));

            if (diag.regime.tag != RegimeTag::Overdamped) {
                const double cond = diag.P.cond2();
                if (cond > result.max_cond) {
                    result.max_cond = cond;
                    result.max_cond_n = n;
                    result.max_cond_lambda = lambda;
                    result.max_cond_mu = mu;
                }
            }

            const HamiltonianBlock ham = hamiltonian_block(n, lambda);
            const Mat2 s = ham.S.as_complex();
            const Mat2 st{s.a, s.c, s.b, s.d};
            result.max_symplectic_residual =
                std::max(result.max_symplectic_residual, residual(st * j * s - j));
        }
    }
    return result;
}

double l2_conservation_drift(const ExperimentConfig& cfg) {
    return run_experiment(cfg).l2_drift_max_rel;
}

namespace {

double l2_gap(const Field& a, const Field& b) {
    std::vector<cplx> diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a.value(k) - b.value(k);
    return l2_norm(Field(a.grid(), std::move(diff)));
}

Field evolve_plain(const Field& f0, const ModelParams& params, double dt,
                   double t_end, SchemeKind kind = SchemeKind::LieTrotter) {
    const SplitScheme scheme{kind, dt};
    const long steps = std::lround(t_end / dt);
    Field state = f0;
    for (long k = 0; k < steps; ++k) state = step(state, params, scheme);
    return state;
}

} // namespace

CovarianceResult covariance_checks(int grid_points, double dt, double t_end) {
    const GridSpec grid(1, grid_points);
    const Field psi0 = make_initial(InitialCondition{}, grid, 0);
    const double kappa = 2.0;
    // The damping flow commutes with the gauge factor only to second order
    // in dt; the symmetric composition keeps the defect quadratic.
    const SchemeKind kind = SchemeKind::Strang;
    CovarianceResult result;

    {
        const ModelParams params(0.5, 2.0);
        const Field direct = evolve_plain(gauge_transform(psi0, kappa, params, 0.0),
                                          params, dt, t_end, kind);
        const Field transformed =
            gauge_transform(evolve_plain(psi0, params, dt, t_end, kind), kappa,
                            params, t_end);
        result.gauge_gap = l2_gap(direct, transformed);
    }
    {
        const ModelParams params(0.5, 0.0);
        const Field direct =
            evolve_plain(scaling_transform(psi0, kappa, params.lambda, 0.0), params,
                         dt, t_end, kind);
        const Field transformed = scaling_transform(
            evolve_plain(psi0, params, dt, t_end, kind), kappa, params.lambda, t_end);
        result.scaling_gap = l2_gap(direct, transformed);
    }
    {
        const ModelParams params(0.5, 0.0);
        const int v = 1;
        const Field direct =
            evolve_plain(galilean_transform(psi0, v, 0.0), params, dt, t_end, kind);
        const Field transformed =
            galilean_transform(evolve_plain(psi0, params, dt, t_end, kind), v, t_end);
        result.galilean_gap = l2_gap(direct, transformed);
    }
    return result;
}

OrderResult splitting_order_study(int grid_points, double t_end,
                                  std::span<const double> dts) {
    const GridSpec grid(1, grid_points);
    const Field psi0 = make_initial(InitialCondition{}, grid, 0);
    const ModelParams params(0.5, 2.0);

    OrderResult result;
    result.dts.assign(dts.begin(), dts.end());
    std::vector<double> log_dt;
    for (double dt : dts) log_dt.push_back(std::log(dt));

    for (SchemeKind kind : {SchemeKind::LieTrotter, SchemeKind::Strang}) {
        std::vector<double> errors, log_err;
        for (double dt : dts) {
            const Field coarse = evolve_plain(psi0, params, dt, t_end, kind);
            const Field reference = evolve_plain(psi0, params, dt / 100.0, t_end, kind);
            errors.push_back(l2_gap(coarse, reference));
            log_err.push_back(std::log(errors.back()));
        }
        // Slope of log(err) against log(dt).
        const double n = static_cast<double>(dts.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < dts.size(); ++i) {
            sx += log_dt[i];
            sy += log_err[i];
            sxx += log_dt[i] * log_dt[i];
            sxy += log_dt[i] * log_err[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if (kind == SchemeKind::LieTrotter) {
            result.lie_order = slope;
            result.lie_errors = errors;
        } else {
            result.strang_order = slope;
            result.strang_errors = errors;
        }
    }
    return result;
}

ResonanceCheckResult resonance_check(double lambda, int r, int n_max) {
    ResonanceCheckResult result;
    result.lambda = lambda;

    const ScanResult scanned = scan(lambda, r, n_max);
    result.scan_min = scanned.min_abs;

    std::vector<double> omega(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int i = 1; i <= n_max; ++i)
        omega[static_cast<std::size_t>(i)] = frequency(i, lambda);

    // Ordered-tuple enumeration: every (m_1..m_p, n_1..n_q) with
    // p + q <= r. Divisors are evaluated over ascending-sorted copies so
    // equal multisets cancel bit-exactly.
    double brute_min = std::numeric_limits<double>::infinity();
    std::array<int, 8> m{}, n{};
    auto sorted_sum = [&omega](const int* idx, int count) {
        std::array<int, 8> copy{};
        std::copy(idx, idx + count, copy.begin());
        std::sort(copy.begin(), copy.begin() + count);
        double sum = 0.0;
        for (int i = 0; i < count; ++i)
            sum += omega[static_cast<std::size_t>(copy[i])];
        return sum;
    };
    auto multiset_equal = [](const int* a, int pa, const int* b, int pb) {
        if (pa != pb) return false;
        std::array<int, 8> ca{}, cb{};
        std::copy(a, a + pa, ca.begin());
        std::copy(b, b + pb, cb.begin());
        std::sort(ca.begin(), ca.begin() + pa);
        std::sort(cb.begin(), cb.begin() + pb);
        return std::equal(ca.begin(), ca.begin() + pa, cb.begin());
    };

    std::function<void(int, int)> loop_n = [&](int p, int q) {
        // All n tuples fixed size q, then evaluate.
        std::function<void(int)> rec = [&](int depth) {
            if (depth == q) {
                if (p == q && multiset_equal(m.data(), p, n.data(), q)) {
                    ++result.cancelling_checked;
                    const double value =
                        sorted_sum(m.data(), p) - sorted_sum(n.data(), q);
                    if (value != 0.0) ++result.cancelling_nonzero;
                    return;
                }
                const double value =
                    sorted_sum(m.data(), p) - sorted_sum(n.data(), q);
                const double abs_value = std::abs(value);
                if (abs_value <= 1e-13) ++result.anomalies;
                brute_min = std::min(brute_min, abs_value);
                return;
            }
            for (int i = 1; i <= n_max; ++i) {
                n[static_cast<std::size_t>(depth)] = i;
                rec(depth + 1);
            }
        };
        rec(0);
    };
    std::function<void(int, int, int)> loop_m = [&](int p, int q, int depth) {
        if (depth == p) {
            loop_n(p, q);
            return;
        }
        for (int i = 1; i <= n_max; ++i) {
            m[static_cast<std::size_t>(depth)] = i;
            loop_m(p, q, depth + 1);
        }
    };
    for (int p = 0; p <= r; ++p) {
        for (int q = 0; q <= r - p; ++q) {
            if (p + q == 0) continue;
            loop_m(p, q, 0);
        }
    }

    result.brute_min = brute_min;
    result.exact_match = brute_min == scanned.min_abs;
    return result;
}

} // namespace slt
