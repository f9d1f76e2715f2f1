#ifndef SLT_RESONANCE_HPP
#define SLT_RESONANCE_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "slt/errors.hpp"

namespace slt {

// A small divisor Omega_{m_1}+...+Omega_{m_p} - Omega_{n_1}-...-Omega_{n_q}
// together with the index data that produced it.
struct DivisorRecord {
    std::vector<int> m_indices; // sorted ascending
    std::vector<int> n_indices; // sorted ascending
    double value;
    int mu3;      // third-largest index over both sides, 1 when fewer than 3
    bool cancels; // the two sides are equal as multisets
};

struct ScanBucket {
    int mu3;
    double min_abs;
    long count; // non-cancelling combinations in this bucket
};

struct ScanResult {
    double lambda;
    int r;
    int n_max;
    std::vector<ScanBucket> buckets; // ascending mu3
    double min_abs;                  // over all non-cancelling combinations
    DivisorRecord min_record;
    long combinations;  // non-cancelling combinations scanned
    double gamma_fit;   // from log(min) ~ log(gamma) - alpha log(mu3)
    double alpha_fit;
};

// Signed divisor for two index multisets (entries >= 1). Summation order is
// canonical (ascending per side) so equal multisets give bit-equal sums.
double divisor(std::span<const int> m, std::span<const int> n, double lambda);

// True iff the frequencies cancel pairwise, i.e. m and n are equal as
// multisets.
bool cancels_pairwise(std::span<const int> m, std::span<const int> n);

// Enumerate all non-cancelling pairs of sorted index multisets with
// p + q <= r and indices in [1, n_max]; bucket minima by mu3 and fit the
// lower-bound exponents. The fit is descriptive output only.
ScanResult scan(double lambda, int r, int n_max, long budget = 10'000'000);

// CSV with columns mu3,min_divisor,count.
void write_scan_csv(const ScanResult& result, std::ostream& out);

int third_largest_index(std::span<const int> m, std::span<const int> n);

} // namespace slt

#endif
