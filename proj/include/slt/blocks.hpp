#ifndef SLT_BLOCKS_HPP
#define SLT_BLOCKS_HPP

#include <array>
#include <complex>

#include "slt/errors.hpp"

namespace slt {

using cplx = std::complex<double>;

// Dense complex 2x2 matrix, row major.
struct Mat2 {
    cplx a, b, c, d; // [[a, b], [c, d]]

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    Mat2 operator*(const Mat2& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }
    std::array<cplx, 2> operator*(const std::array<cplx, 2>& v) const {
        return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
    }
    Mat2 operator-(const Mat2& rhs) const {
        return {a - rhs.a, b - rhs.b, c - rhs.c, d - rhs.d};
    }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    // Largest entry modulus.
    double max_abs() const;
    // Spectral (2-norm) condition number via singular values.
    double cond2() const;
};

// Real symmetric 2x2 change of basis used in the Hamiltonian case.
struct RMat2 {
    double a, b, c, d;

    RMat2 operator*(const RMat2& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }
    double det() const { return a * d - b * c; }
    Mat2 as_complex() const { return {a, b, c, d}; }
};

// Per-mode 2x2 linear block for n = |j|^2.
struct ModeBlock {
    int n;
    double lambda;
    double mu;
    Mat2 entries;
};

enum class RegimeTag { Oscillatory, Overdamped, Jordan };

struct Regime {
    RegimeTag tag;
    double discriminant; // 4 n^2 + 8 lambda n - mu^2
};

struct BlockDiagonalization {
    Regime regime;
    Mat2 P;
    Mat2 P_inv;
    Mat2 D; // diagonal, or upper triangular in the Jordan regime
};

// Predicted exponential decay data: the per-mode pair (alpha_j, beta_j)
// and the global minimum over all nonzero modes.
struct RatePrediction {
    double alpha;     // per-mode rate for n = |j|^2
    int beta;         // 1 when the block is a Jordan double eigenvalue
    double global_alpha;
    int global_beta;
};

struct HamiltonianBlock {
    int n;
    double lambda;
    RMat2 S;
    RMat2 S_inv;
    double omega; // sqrt(n^2 + 2 lambda n)
};

// Tolerance band for detecting the double-eigenvalue boundary; exact
// equality is measure zero and the change of basis degenerates there.
inline constexpr double kJordanTol = 1e-9;

ModeBlock block_matrix(int n, double lambda, double mu);
Regime classify(int n, double lambda, double mu, double tol = kJordanTol);
BlockDiagonalization diagonalize(const ModeBlock& block, double tol = kJordanTol);

RatePrediction mode_rate(int j_norm_sq, double lambda, double mu);
// (alpha, beta) minimized over all nonzero modes, with the n >= 2 boundary
// scan in the overdamped case.
std::pair<double, int> global_rate(double lambda, double mu);

HamiltonianBlock hamiltonian_block(int n, double lambda);
// Omega_n = sqrt(n^2 + 2 lambda n), the undamped block frequency.
double frequency(int n, double lambda);

} // namespace slt

#endif
