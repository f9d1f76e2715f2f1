#ifndef SLT_FIELD_HPP
#define SLT_FIELD_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "slt/grid.hpp"

namespace slt {

using cplx = std::complex<double>;

// Complex-valued state sampled on the physical grid. Values are immutable
// after construction; all operations on fields return new values.
class Field {
public:
    Field(GridSpec grid, std::vector<cplx> values);

    static Field constant(const GridSpec& grid, cplx value);
    // 1d convenience: f(x) sampled on the grid points.
    static Field sample(const GridSpec& grid, const std::function<cplx(double)>& f);

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    cplx value(std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

private:
    GridSpec grid_;
    std::vector<cplx> values_;
};

// Fourier coefficients, normalized so a constant field c has coefficient c
// at frequency 0 (mean convention). Storage order follows the per-axis
// frequency map {0,...,K/2-1,-K/2,...,-1}.
class Spectrum {
public:
    Spectrum(GridSpec grid, std::vector<cplx> coefficients);

    static Spectrum zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> coefficients() const { return coeffs_; }
    cplx coefficient_at(std::size_t flat) const { return coeffs_[flat]; }

    // Coefficient by frequency vector (one entry per axis, each in
    // [-K/2, K/2)). 1d overload for convenience.
    cplx coefficient(std::span<const int> frequencies) const;
    cplx coefficient(int frequency) const;

    // Flat storage index of a frequency vector.
    std::size_t index_of(std::span<const int> frequencies) const;

    std::size_t size() const { return coeffs_.size(); }

    Spectrum with_coefficient(std::size_t flat, cplx value) const;

private:
    GridSpec grid_;
    std::vector<cplx> coeffs_;
};

Spectrum forward_transform(const Field& f);
Field inverse_transform(const Spectrum& s);

// Mean-based L2 norm: ||e^{imx}|| = 1.
double l2_norm(const Field& f);
double l2_norm(const Spectrum& s);

// Sobolev norm with weight (1+|n|^2)^s.
double hs_norm(const Spectrum& s, double sobolev_s);

// Frequency-0 coefficient, equal to the grid average.
cplx mean(const Field& f);

// psi = e^{i theta} (a + w) with <w> = 0 and a = |<psi>| > 0.
struct PolarDecomposition {
    double a;
    double theta;
    Spectrum w;
};

PolarDecomposition polar_decompose(const Field& f, double mean_floor = 1e-12);
Field polar_reconstruct(const PolarDecomposition& p);

struct DomainParams {
    double mean_floor = 1e-12;    // minimum |<f>|
    double modulus_ratio = 0.05;  // minimum min_x|f| / |<f>|
};

// Admissibility of the field logarithm: nonvanishing mean and pointwise
// modulus bounded below relative to the mean. The sobolev_s argument is
// kept for interface compatibility; the check is pointwise.
bool domain_check(const Field& f, double sobolev_s = 1.0,
                  const DomainParams& params = {});

// log f = log(f/<f>) + log|<f>| + i arg<f>, principal branches. Satisfies
// exp(field_log(f)) = f pointwise on the admissible domain.
Field field_log(const Field& f, const DomainParams& params = {});

} // namespace slt

#endif
