#ifndef SLT_GRID_HPP
#define SLT_GRID_HPP

#include <cstddef>
#include <vector>

#include "slt/errors.hpp"

namespace slt {

// Uniform grid on the torus [-pi, pi)^d with K points per axis.
// K must be an even power of two, K >= 4 (the transform backend is
// configured for power-of-two sizes only).
class GridSpec {
public:
    GridSpec(int dim, int points_per_axis);

    int dim() const { return dim_; }
    int points_per_axis() const { return points_; }
    std::size_t size() const { return size_; } // K^d
    double spacing() const;                    // 2*pi/K

    // Grid coordinate along one axis, x_k = -pi + k*dx, 0 <= k < K.
    double coord(int k) const;

    // Frequency associated with a per-axis storage index in [0, K):
    // {0, 1, ..., K/2-1, -K/2, ..., -1}.
    int frequency(int index) const;

    // Decompose a flat storage index into per-axis indices (row-major,
    // axis 0 slowest).
    void unflatten(std::size_t flat, int* axis_indices) const;

    // Squared frequency modulus |n|^2 for a flat spectral index.
    long frequency_norm_sq(std::size_t flat) const;

    bool operator==(const GridSpec& other) const {
        return dim_ == other.dim_ && points_ == other.points_;
    }
    bool operator!=(const GridSpec& other) const { return !(*this == other); }

private:
    int dim_;
    int points_;
    std::size_t size_;
};

} // namespace slt

#endif
