#include "slt/fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace slt::detail {

namespace {

// Plan creation is not thread safe in FFTW; execution through the
// new-array interface is. Plans are created once per (dim, K, sign) with
// FFTW_UNALIGNED so they can run on any caller buffer.
class PlanCache {
public:
    fftw_plan get(int dim, int points, int sign) {
        std::scoped_lock lock(mutex_);
        auto key = std::tuple{dim, points, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t n = 1;
        for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(points);
        std::vector<fftw_complex> in(n), out(n);
        std::vector<int> dims(static_cast<std::size_t>(dim), points);
        fftw_plan p = fftw_plan_dft(dim, dims.data(), in.data(), out.data(),
                                    sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void dft(int dim, int points_per_axis, int sign,
         const std::complex<double>* in, std::complex<double>* out) {
    fftw_plan plan = cache().get(dim, points_per_axis,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    // fftw_complex and std::complex<double> share layout.
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace slt::detail
