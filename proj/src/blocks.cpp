#include "slt/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slt {

namespace {

void require_params(int n, double lambda, double mu) {
    if (n < 1) throw InvalidParam("block index n must be >= 1");
    if (!(lambda > -0.5) || !std::isfinite(lambda))
        throw InvalidParam("lambda must be > -1/2");
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw InvalidParam("mu must be >= 0");
}

} // namespace

double Mat2::max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

double Mat2::cond2() const {
    // Singular values from the eigenvalues of M^H M.
    const double aa = std::norm(a) + std::norm(c);
    const double dd = std::norm(b) + std::norm(d);
    const cplx ab = std::conj(a) * b + std::conj(c) * d;
    const double tr = aa + dd;
    const double det = aa * dd - std::norm(ab);
    const double gap = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double hi = tr / 2.0 + gap;
    const double lo = tr / 2.0 - gap;
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

ModeBlock block_matrix(int n, double lambda, double mu) {
    require_params(n, lambda, mu);
    const cplx z{lambda, -mu / 2.0}; // lambda + mu/(2i)
    const cplx zc = std::conj(z);
    const double dn = static_cast<double>(n);
    Mat2 entries{dn + z, zc, -z, -dn - zc};
    return ModeBlock{n, lambda, mu, entries};
}

Regime classify(int n, double lambda, double mu, double tol) {
    require_params(n, lambda, mu);
    const double dn = static_cast<double>(n);
    const double disc = 4.0 * dn * dn + 8.0 * lambda * dn - mu * mu;
    RegimeTag tag;
    if (std::abs(disc) <= tol)
        tag = RegimeTag::Jordan;
    else if (disc > 0.0)
        tag = RegimeTag::Oscillatory;
    else
        tag = RegimeTag::Overdamped;
    return Regime{tag, disc};
}

BlockDiagonalization diagonalize(const ModeBlock& block, double tol) {
    const double n = static_cast<double>(block.n);
    const double lambda = block.lambda;
    const double mu = block.mu;
    const Regime regime = classify(block.n, lambda, mu, tol);
    const cplx half_mu_over_i{0.0, -mu / 2.0}; // mu/(2i)
    const cplx off_minus = lambda - half_mu_over_i;
    const cplx off_plus = lambda + half_mu_over_i;

    if (regime.tag == RegimeTag::Jordan) {
        const double s = n + lambda;
        Mat2 p{1.0, -off_minus / s, -off_plus / s, 2.0};
        Mat2 p_inv{2.0, off_minus / s, off_plus / s, 1.0};
        Mat2 d{half_mu_over_i, off_minus, 0.0, half_mu_over_i};
        return BlockDiagonalization{regime, p, p_inv, d};
    }

    // Oscillatory and overdamped share the same closed forms; delta is
    // real in the first case and positive-imaginary in the second. The
    // columns of P are the eigenvectors for mu/(2i) -+ delta in the order
    // of D; the basis is normalized so det P = 1.
    const cplx delta = std::sqrt(cplx{n * n + 2.0 * lambda * n - mu * mu / 4.0, 0.0});
    const cplx q = n + lambda + delta;
    const cplx scale = 1.0 / std::sqrt(2.0 * delta * q);
    Mat2 p{scale * (-off_minus), scale * (-q), scale * q, scale * off_plus};
    Mat2 p_inv{scale * off_plus, scale * q, scale * (-q), scale * (-off_minus)};
    Mat2 d{half_mu_over_i - delta, 0.0, 0.0, half_mu_over_i + delta};
    return BlockDiagonalization{regime, p, p_inv, d};
}

RatePrediction mode_rate(int j_norm_sq, double lambda, double mu) {
    require_params(j_norm_sq, lambda, mu);
    if (!(mu > 0.0)) throw InvalidParam("mode_rate requires mu > 0");
    const double n = static_cast<double>(j_norm_sq);
    const Regime regime = classify(j_norm_sq, lambda, mu);
    const double slack = mu * mu / 4.0 - n * n - 2.0 * lambda * n;
    // Inside the Jordan band the boundary value mu/2 applies; the sqrt
    // would otherwise magnify the band width into the rate.
    const double alpha = regime.tag == RegimeTag::Overdamped
                             ? mu / 2.0 - std::sqrt(std::max(0.0, slack))
                             : mu / 2.0;
    const int beta = regime.tag == RegimeTag::Jordan ? 1 : 0;
    auto [global_alpha, global_beta] = global_rate(lambda, mu);
    return RatePrediction{alpha, beta, global_alpha, global_beta};
}

std::pair<double, int> global_rate(double lambda, double mu) {
    require_params(1, lambda, mu);
    if (!(mu > 0.0)) throw InvalidParam("global_rate requires mu > 0");
    const Regime first = classify(1, lambda, mu);
    if (first.tag == RegimeTag::Jordan) return {mu / 2.0, 1};
    if (first.tag == RegimeTag::Oscillatory) return {mu / 2.0, 0};
    // Overdamped at n = 1: the slow eigenvalue of the first block sets the
    // rate; a Jordan boundary at some larger n forces the polynomial factor.
    const double alpha = mu / 2.0 - std::sqrt(mu * mu / 4.0 - 1.0 - 2.0 * lambda);
    int beta = 0;
    for (int n = 2;; ++n) {
        const Regime r = classify(n, lambda, mu);
        if (r.tag == RegimeTag::Jordan) {
            beta = 1;
            break;
        }
        if (r.discriminant > 0.0) break; // increasing in n, no boundary left
    }
    return {alpha, beta};
}

HamiltonianBlock hamiltonian_block(int n, double lambda) {
    require_params(n, lambda, 0.0);
    const double dn = static_cast<double>(n);
    const double omega = std::sqrt(dn * dn + 2.0 * lambda * dn);
    const double scale = 1.0 / std::sqrt((dn + omega) * (dn + 2.0 * lambda + omega));
    const double diag = scale * (dn + lambda + omega);
    RMat2 s{diag, -scale * lambda, -scale * lambda, diag};
    RMat2 s_inv{diag, scale * lambda, scale * lambda, diag};
    return HamiltonianBlock{n, lambda, s, s_inv, omega};
}

double frequency(int n, double lambda) {
    require_params(n, lambda, 0.0);
    const double dn = static_cast<double>(n);
    return std::sqrt(dn * dn + 2.0 * lambda * dn);
}

} // namespace slt
