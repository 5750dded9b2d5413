#ifndef ROCKETQD_EXPERIMENT_RANKSUM_HPP
#define ROCKETQD_EXPERIMENT_RANKSUM_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace rocketqd {

    struct RankSumResult {
        double u = 0.0;       // U statistic of the first sample
        double z = 0.0;       // normal approximation with tie and continuity correction
        double p_value = 1.0; // two-sided
    };

    /// Wilcoxon rank-sum / Mann-Whitney U test.
    inline RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b)
    {
        if (a.empty() || b.empty())
            throw std::invalid_argument("rank-sum test needs two non-empty samples");
        const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;
        std::vector<double> pooled(a.begin(), a.end());
        pooled.insert(pooled.end(), b.begin(), b.end());
        for (double v : pooled)
            if (!std::isfinite(v))
                throw std::invalid_argument("rank-sum test needs finite values");

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

        std::vector<double> ranks(n);
        double tie_term = 0.0;
        for (std::size_t i = 0; i < n;) {
            std::size_t j = i;
            while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]])
                ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k)
                ranks[order[k]] = avg;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }

        double r1 = 0.0;
        for (std::size_t i = 0; i < n1; ++i)
            r1 += ranks[i];
        const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2), dn = static_cast<double>(n);

        RankSumResult r;
        r.u = r1 - dn1 * (dn1 + 1.0) / 2.0;
        const double mean = dn1 * dn2 / 2.0;
        const double var = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
        if (!(var > 0.0))
            return r; // every value tied
        const double diff = r.u - mean;
        const double corrected = std::max(0.0, std::fabs(diff) - 0.5);
        r.z = std::copysign(corrected / std::sqrt(var), diff);
        r.p_value = std::min(1.0, std::erfc(std::fabs(r.z) / std::sqrt(2.0)));
        return r;
    }

} // namespace rocketqd

#endif
