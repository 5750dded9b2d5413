#ifndef ROCKETQD_EMITTERS_RANKING_HPP
#define ROCKETQD_EMITTERS_RANKING_HPP

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include <rocketqd/qd/archive.hpp>

namespace rocketqd {

    enum class RankMethod { TwoStageImprovement, Improvement };

    namespace detail {
        inline int stage_of(InsertStatus s)
        {
            switch (s) {
            case InsertStatus::NewCell: return 0;
            case InsertStatus::Improved: return 1;
            case InsertStatus::Rejected: return 2;
            }
            return 2;
        }
    } // namespace detail

    /// "2imp": new cells first, then improvements, then rejections; each stage by
    /// descending value. Returns indices into `results`, best first. Stable.
    inline std::vector<std::size_t> rank_2imp(std::span<const InsertResult> results)
    {
        std::vector<std::size_t> order(results.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const int sa = detail::stage_of(results[a].status);
            const int sb = detail::stage_of(results[b].status);
            if (sa != sb)
                return sa < sb;
            return results[a].value > results[b].value;
        });
        return order;
    }

    /// "imp": descending value (fitness minus pre-insert threshold), status ignored. Stable.
    inline std::vector<std::size_t> rank_imp(std::span<const InsertResult> results)
    {
        std::vector<std::size_t> order(results.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return results[a].value > results[b].value; });
        return order;
    }

    inline std::vector<std::size_t> rank(RankMethod method, std::span<const InsertResult> results)
    {
        return method == RankMethod::TwoStageImprovement ? rank_2imp(results) : rank_imp(results);
    }

} // namespace rocketqd

#endif
