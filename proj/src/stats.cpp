#include "oscilswarm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oscilswarm::harness {

double quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw Error(ErrorCode::empty_input, "quantile of an empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values)
{
    if (values.empty())
        throw Error(ErrorCode::empty_input, "cannot summarize an empty sample");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    SummaryStats s;
    s.n_runs = sorted.size();
    // summing in sorted order keeps the mean independent of input order
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    s.median = quantile(sorted, 0.5);
    s.q1 = quantile(sorted, 0.25);
    s.q3 = quantile(sorted, 0.75);

    const double iqr = s.q3 - s.q1;
    const double lo_fence = s.q1 - 1.5 * iqr;
    const double hi_fence = s.q3 + 1.5 * iqr;
    s.whisker_lo = s.q1;
    s.whisker_hi = s.q3;
    bool seen = false;
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) {
            ++s.n_outliers;
            continue;
        }
        if (!seen) {
            s.whisker_lo = v;
            seen = true;
        }
        s.whisker_hi = v;
    }
    // an interpolated quartile can lie beyond every non-outlier value
    s.whisker_lo = std::min(s.whisker_lo, s.q1);
    s.whisker_hi = std::max(s.whisker_hi, s.q3);
    return s;
}

} // namespace oscilswarm::harness
