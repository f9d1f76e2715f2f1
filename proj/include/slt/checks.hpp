#ifndef SLT_CHECKS_HPP
#define SLT_CHECKS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "slt/blocks.hpp"
#include "slt/experiments.hpp"

namespace slt {

// Eigenvalues of an arbitrary complex 2x2 matrix through the
// characteristic polynomial; serves as the cross-check path against the
// closed-form block eigenvalues.
std::array<cplx, 2> generic_eigenvalues(const Mat2& m);

struct BlockScanResult {
    long blocks = 0;
    double max_diag_residual = 0.0;      // |P_inv A P - D|
    double max_inverse_residual = 0.0;   // |P P_inv - I|
    double max_det_gap = 0.0;            // |det P - 1|, oscillatory blocks
    double max_eigen_gap = 0.0;          // closed form vs generic solver
    double max_symplectic_residual = 0.0; // |S^T J S - J|
    double max_cond = 0.0;               // oscillatory/Jordan blocks
    int max_cond_n = 0;
    double max_cond_lambda = 0.0;
    double max_cond_mu = 0.0;
};

// Random (lambda, mu) draws over (-0.49, 2] x (0, 10], all n in [1, n_max].
BlockScanResult block_algebra_scan(int n_max, int draws, unsigned long seed);

// Worst relative L2 drift of a full experiment run.
double l2_conservation_drift(const ExperimentConfig& cfg);

struct CovarianceResult {
    double gauge_gap = 0.0;    // mu=2, kappa=2
    double scaling_gap = 0.0;  // mu=0, kappa=2
    double galilean_gap = 0.0; // mu=0, v=1
};

// Transform-then-evolve against evolve-then-transform, L2 gap at t_end.
CovarianceResult covariance_checks(int grid_points, double dt, double t_end);

struct OrderResult {
    double lie_order = 0.0;
    double strang_order = 0.0;
    std::vector<double> lie_errors;
    std::vector<double> strang_errors;
    std::vector<double> dts;
};

// Observed convergence order at t_end on the relax configuration, each run
// measured against the same scheme at dt/100.
OrderResult splitting_order_study(int grid_points, double t_end,
                                  std::span<const double> dts);

struct ResonanceCheckResult {
    double lambda = 0.0;
    long cancelling_checked = 0;
    long cancelling_nonzero = 0; // should be 0
    long anomalies = 0;          // non-cancelling with |divisor| <= 1e-13
    double scan_min = 0.0;
    double brute_min = 0.0;
    bool exact_match = false;    // scan minimum equals brute-force minimum
};

// Straightforward ordered-tuple enumeration, independent of scan()'s
// multiset walk; both evaluate divisors in canonical ascending order.
ResonanceCheckResult resonance_check(double lambda, int r, int n_max);

} // namespace slt

#endif
