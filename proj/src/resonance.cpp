#include "slt/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <ostream>

#include "slt/blocks.hpp"

namespace slt {

namespace {

void require_indices(std::span<const int> indices) {
    for (int i : indices) {
        if (i < 1) throw InvalidParam("divisor indices must be >= 1");
    }
}

double sum_frequencies(std::span<const int> sorted, std::span<const double> omega) {
    double sum = 0.0;
    for (int i : sorted) sum += omega[static_cast<std::size_t>(i)];
    return sum;
}

} // namespace

int third_largest_index(std::span<const int> m, std::span<const int> n) {
    std::vector<int> all(m.begin(), m.end());
    all.insert(all.end(), n.begin(), n.end());
    if (all.size() < 3) return 1;
    std::sort(all.begin(), all.end(), std::greater<int>());
    return all[2];
}

double divisor(std::span<const int> m, std::span<const int> n, double lambda) {
    require_indices(m);
    require_indices(n);
    if (!(lambda > -0.5)) throw InvalidParam("lambda must be > -1/2");
    std::vector<int> ms(m.begin(), m.end());
    std::vector<int> ns(n.begin(), n.end());
    std::sort(ms.begin(), ms.end());
    std::sort(ns.begin(), ns.end());
    int top = 0;
    for (int i : ms) top = std::max(top, i);
    for (int i : ns) top = std::max(top, i);
    std::vector<double> omega(static_cast<std::size_t>(top) + 1, 0.0);
    for (int i = 1; i <= top; ++i) omega[static_cast<std::size_t>(i)] = frequency(i, lambda);
    return sum_frequencies(ms, omega) - sum_frequencies(ns, omega);
}

bool cancels_pairwise(std::span<const int> m, std::span<const int> n) {
    if (m.size() != n.size()) return false;
    std::vector<int> ms(m.begin(), m.end());
    std::vector<int> ns(n.begin(), n.end());
    std::sort(ms.begin(), ms.end());
    std::sort(ns.begin(), ns.end());
    return ms == ns;
}

ScanResult scan(double lambda, int r, int n_max, long budget) {
    if (!(lambda > -0.5)) throw InvalidParam("lambda must be > -1/2");
    if (r < 3) throw InvalidParam("scan requires r >= 3");
    if (n_max < 3) throw InvalidParam("scan requires n_max >= 3");

    std::vector<double> omega(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int i = 1; i <= n_max; ++i)
        omega[static_cast<std::size_t>(i)] = frequency(i, lambda);

    // Sorted multisets of each size up to r, with their frequency sums
    // accumulated in ascending index order.
    std::vector<std::vector<std::vector<int>>> multisets(static_cast<std::size_t>(r) + 1);
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(r) + 1);
    multisets[0] = {{}};
    sums[0] = {0.0};
    for (int size = 1; size <= r; ++size) {
        for (std::size_t i = 0; i < multisets[size - 1].size(); ++i) {
            const auto& base = multisets[size - 1][i];
            int lo = base.empty() ? 1 : base.back();
            for (int next = lo; next <= n_max; ++next) {
                auto extended = base;
                extended.push_back(next);
                multisets[size].push_back(std::move(extended));
                sums[size].push_back(sums[size - 1][i] +
                                     omega[static_cast<std::size_t>(next)]);
            }
        }
    }

    std::map<int, ScanBucket> buckets;
    ScanResult result{lambda, r, n_max, {}, 0.0, {}, 0, 0.0, 0.0};
    double min_abs = std::numeric_limits<double>::infinity();
    DivisorRecord min_record{};
    long combinations = 0;

    for (int p = 0; p <= r; ++p) {
        for (int q = 0; q <= r - p; ++q) {
            if (p + q == 0) continue;
            for (std::size_t im = 0; im < multisets[p].size(); ++im) {
                for (std::size_t in = 0; in < multisets[q].size(); ++in) {
                    const auto& ms = multisets[p][im];
                    const auto& ns = multisets[q][in];
                    if (p == q && ms == ns) continue; // cancels pairwise
                    if (++combinations > budget)
                        throw BudgetExceeded(
                            "resonance scan exceeded its combination budget");
                    const double value = sums[p][im] - sums[q][in];
                    const int mu3 = third_largest_index(ms, ns);
                    const double abs_value = std::abs(value);
                    auto [it, inserted] = buckets.try_emplace(
                        mu3, ScanBucket{mu3, abs_value, 0});
                    ++it->second.count;
                    if (abs_value < it->second.min_abs)
                        it->second.min_abs = abs_value;
                    if (abs_value < min_abs) {
                        min_abs = abs_value;
                        min_record = DivisorRecord{ms, ns, value, mu3, false};
                    }
                }
            }
        }
    }

    result.combinations = combinations;
    result.min_abs = min_abs;
    result.min_record = min_record;
    for (const auto& [mu3, bucket] : buckets) result.buckets.push_back(bucket);

    // Descriptive least-squares fit of log(min) against log(mu3), mu3 >= 2.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long count = 0;
    for (const ScanBucket& b : result.buckets) {
        if (b.mu3 < 2 || b.min_abs <= 0.0) continue;
        const double x = std::log(static_cast<double>(b.mu3));
        const double y = std::log(b.min_abs);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = static_cast<double>(count) * sxx - sx * sx;
        const double slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / static_cast<double>(count);
        result.alpha_fit = -slope;
        result.gamma_fit = std::exp(intercept);
    }
    return result;
}

void write_scan_csv(const ScanResult& result, std::ostream& out) {
    out << "mu3,min_divisor,count\n";
    char buf[64];
    for (const ScanBucket& b : result.buckets) {
        std::snprintf(buf, sizeof(buf), "%.17g", b.min_abs);
        out << b.mu3 << ',' << buf << ',' << b.count << '\n';
    }
}

} // namespace slt
