#ifndef SLT_FFT_BACKEND_HPP
#define SLT_FFT_BACKEND_HPP

#include <complex>
#include <cstddef>

namespace slt::detail {

// Unnormalized c2c DFT over a rank-d array with equal extent K per axis,
// sign -1 forward (e^{-2pi i nk/K}), sign +1 backward. in and out must not
// alias. Thread safe; plans are cached internally.
void dft(int dim, int points_per_axis, int sign,
         const std::complex<double>* in, std::complex<double>* out);

} // namespace slt::detail

#endif
