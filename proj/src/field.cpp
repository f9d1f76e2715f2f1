#include "slt/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slt/fft_backend.hpp"

namespace slt {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }

void require_finite(std::span<const cplx> values, const char* what) {
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFinite(std::string(what) + " contains a non-finite entry");
    }
}

// Parity of the sum of per-axis storage indices. Equals the parity of the
// frequency sum (K even), which carries the phase shift between the
// [-pi,pi) grid and the 0-based DFT convention.
bool odd_index_sum(std::size_t flat, int dim, int points) {
    int sum = 0;
    for (int axis = 0; axis < dim; ++axis) {
        sum += static_cast<int>(flat % static_cast<std::size_t>(points));
        flat /= static_cast<std::size_t>(points);
    }
    return (sum & 1) != 0;
}

} // namespace

GridSpec::GridSpec(int dim, int points_per_axis)
    : dim_(dim), points_(points_per_axis) {
    if (dim < 1) throw InvalidParam("grid dimension must be >= 1");
    if (points_per_axis < 4 || points_per_axis % 2 != 0)
        throw InvalidParam("points per axis must be even and >= 4");
    if (!is_power_of_two(points_per_axis))
        throw InvalidParam("points per axis must be a power of two");
    size_ = 1;
    for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(points_per_axis);
}

double GridSpec::spacing() const { return two_pi / points_; }

double GridSpec::coord(int k) const { return -std::numbers::pi + k * spacing(); }

int GridSpec::frequency(int index) const {
    return index < points_ / 2 ? index : index - points_;
}

void GridSpec::unflatten(std::size_t flat, int* axis_indices) const {
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        axis_indices[axis] = static_cast<int>(flat % static_cast<std::size_t>(points_));
        flat /= static_cast<std::size_t>(points_);
    }
}

long GridSpec::frequency_norm_sq(std::size_t flat) const {
    long norm = 0;
    for (int axis = 0; axis < dim_; ++axis) {
        int idx = static_cast<int>(flat % static_cast<std::size_t>(points_));
        long n = frequency(idx);
        norm += n * n;
        flat /= static_cast<std::size_t>(points_);
    }
    return norm;
}

Field::Field(GridSpec grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw InvalidParam("field value count does not match grid size");
    require_finite(values_, "field");
}

Field Field::constant(const GridSpec& grid, cplx value) {
    return Field(grid, std::vector<cplx>(grid.size(), value));
}

Field Field::sample(const GridSpec& grid, const std::function<cplx(double)>& f) {
    if (grid.dim() != 1) throw InvalidParam("Field::sample expects a 1d grid");
    std::vector<cplx> values(grid.size());
    for (int k = 0; k < grid.points_per_axis(); ++k) values[k] = f(grid.coord(k));
    return Field(grid, std::move(values));
}

Spectrum::Spectrum(GridSpec grid, std::vector<cplx> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != grid_.size())
        throw InvalidParam("coefficient count does not match grid size");
    require_finite(coeffs_, "spectrum");
}

Spectrum Spectrum::zero(const GridSpec& grid) {
    return Spectrum(grid, std::vector<cplx>(grid.size(), cplx{0.0, 0.0}));
}

std::size_t Spectrum::index_of(std::span<const int> frequencies) const {
    if (static_cast<int>(frequencies.size()) != grid_.dim())
        throw InvalidParam("frequency vector has wrong dimension");
    const int k = grid_.points_per_axis();
    std::size_t flat = 0;
    for (int axis = 0; axis < grid_.dim(); ++axis) {
        int n = frequencies[axis];
        if (n < -k / 2 || n >= k / 2)
            throw InvalidParam("frequency outside [-K/2, K/2)");
        int idx = n >= 0 ? n : n + k;
        flat = flat * static_cast<std::size_t>(k) + static_cast<std::size_t>(idx);
    }
    return flat;
}

cplx Spectrum::coefficient(std::span<const int> frequencies) const {
    return coeffs_[index_of(frequencies)];
}

cplx Spectrum::coefficient(int frequency) const {
    return coefficient(std::span<const int>(&frequency, 1));
}

Spectrum Spectrum::with_coefficient(std::size_t flat, cplx value) const {
    std::vector<cplx> coeffs(coeffs_.begin(), coeffs_.end());
    coeffs[flat] = value;
    return Spectrum(grid_, std::move(coeffs));
}

Spectrum forward_transform(const Field& f) {
    const GridSpec& g = f.grid();
    std::vector<cplx> out(g.size());
    detail::dft(g.dim(), g.points_per_axis(), -1, f.values().data(), out.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= scale;
        if (odd_index_sum(i, g.dim(), g.points_per_axis())) out[i] = -out[i];
    }
    return Spectrum(g, std::move(out));
}

Field inverse_transform(const Spectrum& s) {
    const GridSpec& g = s.grid();
    std::vector<cplx> tmp(s.coefficients().begin(), s.coefficients().end());
    for (std::size_t i = 0; i < tmp.size(); ++i) {
        if (odd_index_sum(i, g.dim(), g.points_per_axis())) tmp[i] = -tmp[i];
    }
    std::vector<cplx> out(g.size());
    detail::dft(g.dim(), g.points_per_axis(), +1, tmp.data(), out.data());
    return Field(g, std::move(out));
}

double l2_norm(const Field& f) {
    double sum = 0.0;
    for (const cplx& v : f.values()) sum += std::norm(v);
    return std::sqrt(sum / static_cast<double>(f.size()));
}

double l2_norm(const Spectrum& s) {
    double sum = 0.0;
    for (const cplx& c : s.coefficients()) sum += std::norm(c);
    return std::sqrt(sum);
}

double hs_norm(const Spectrum& s, double sobolev_s) {
    const GridSpec& g = s.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double weight = std::pow(1.0 + static_cast<double>(g.frequency_norm_sq(i)),
                                 sobolev_s);
        sum += weight * std::norm(s.coefficient_at(i));
    }
    return std::sqrt(sum);
}

cplx mean(const Field& f) {
    cplx sum{0.0, 0.0};
    for (const cplx& v : f.values()) sum += v;
    return sum / static_cast<double>(f.size());
}

PolarDecomposition polar_decompose(const Field& f, double mean_floor) {
    const cplx m = mean(f);
    const double a = std::abs(m);
    if (a <= mean_floor)
        throw ZeroMean("field mean below floor; polar decomposition undefined");
    const double theta = std::arg(m);
    const cplx rot = std::exp(cplx{0.0, -theta});
    std::vector<cplx> w_phys(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) w_phys[k] = rot * f.value(k) - a;
    Spectrum w = forward_transform(Field(f.grid(), std::move(w_phys)));
    // <w> vanishes by construction; pin the stored coefficient to exact zero.
    return PolarDecomposition{a, theta, w.with_coefficient(0, cplx{0.0, 0.0})};
}

Field polar_reconstruct(const PolarDecomposition& p) {
    Field w = inverse_transform(p.w);
    const cplx rot = std::exp(cplx{0.0, p.theta});
    std::vector<cplx> values(w.size());
    for (std::size_t k = 0; k < w.size(); ++k)
        values[k] = rot * (p.a + w.value(k));
    return Field(w.grid(), std::move(values));
}

bool domain_check(const Field& f, double /*sobolev_s*/, const DomainParams& params) {
    const double a = std::abs(mean(f));
    if (a <= params.mean_floor) return false;
    double min_mod = std::numeric_limits<double>::infinity();
    for (const cplx& v : f.values()) min_mod = std::min(min_mod, std::abs(v));
    return min_mod > params.modulus_ratio * a;
}

Field field_log(const Field& f, const DomainParams& params) {
    if (!domain_check(f, 1.0, params))
        throw DomainViolation("field outside the admissible domain of log");
    const cplx m = mean(f);
    const cplx base = cplx{std::log(std::abs(m)), std::arg(m)};
    std::vector<cplx> out(f.size());
    for (std::size_t k = 0; k < f.size(); ++k)
        out[k] = std::log(f.value(k) / m) + base;
    return Field(f.grid(), std::move(out));
}

} // namespace slt
