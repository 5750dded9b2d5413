#ifndef ROCKETQD_QD_ARCHIVE_HPP
#define ROCKETQD_QD_ARCHIVE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <rocketqd/rocket/design.hpp>

namespace rocketqd {

    /// Design summary carried alongside a solution for export.
    struct SolutionMeta {
        int nose_type = 0;
        double stability = 0.0;
        std::array<double, 3> altitudes{};
        friend bool operator==(const SolutionMeta&, const SolutionMeta&) = default;
    };

    struct Solution {
        Genome genome{};
        double fitness = 0.0;
        double measure_x = 0.0;
        double measure_y = 0.0;
        SolutionMeta meta;
        friend bool operator==(const Solution&, const Solution&) = default;
    };

    struct ArchiveConfig {
        int x_bins = 100;
        int y_bins = 100;
        double x_lo = 0.0;
        double x_hi = 15.0;
        double y_lo = 0.0;
        double y_hi = 90.0;
        double learning_rate = 1.0;
        double threshold_floor = 0.0;

        double x_width() const { return (x_hi - x_lo) / x_bins; }
        double y_width() const { return (y_hi - y_lo) / y_bins; }
        std::size_t cell_count() const { return static_cast<std::size_t>(x_bins) * static_cast<std::size_t>(y_bins); }

        /// Same grid; the learning rate is an insertion policy, not part of the layout.
        bool same_grid(const ArchiveConfig& o) const
        {
            return x_bins == o.x_bins && y_bins == o.y_bins && x_lo == o.x_lo && x_hi == o.x_hi && y_lo == o.y_lo
                && y_hi == o.y_hi;
        }
    };

    struct CellIndex {
        int xi = 0;
        int yi = 0;
        friend bool operator==(const CellIndex&, const CellIndex&) = default;
    };

    enum class InsertStatus { NewCell, Improved, Rejected };

    struct InsertResult {
        InsertStatus status = InsertStatus::Rejected;
        double value = 0.0; // fitness minus the pre-insert threshold
        bool error = false; // non-finite fitness
    };

    namespace detail {
        inline int bin_of(double v, double lo, double hi, int bins)
        {
            if (!(v > lo)) // also catches NaN
                return 0;
            if (v >= hi)
                return bins - 1;
            const int i = static_cast<int>(std::floor((v - lo) * bins / (hi - lo)));
            return std::clamp(i, 0, bins - 1);
        }
    } // namespace detail

    /// Half-open uniform binning; measures outside the range clamp to the edge bins and
    /// the global maximum belongs to the last bin.
    inline CellIndex index_of(double measure_x, double measure_y, const ArchiveConfig& cfg)
    {
        return {detail::bin_of(measure_x, cfg.x_lo, cfg.x_hi, cfg.x_bins), detail::bin_of(measure_y, cfg.y_lo, cfg.y_hi, cfg.y_bins)};
    }

    /// Fixed grid of elites with per-cell acceptance thresholds.
    ///
    /// With learning rate 1 this is a MAP-Elites archive: the threshold equals the occupant's
    /// fitness. With a smaller rate the threshold anneals toward accepted fitness values
    /// (CMA-MAE) while the occupant stays the best solution ever accepted into the cell.
    class GridArchive {
    public:
        explicit GridArchive(ArchiveConfig cfg = {}) : _cfg(cfg), _cells(cfg.cell_count()), _thresholds(cfg.cell_count(), cfg.threshold_floor)
        {
            if (cfg.x_bins <= 0 || cfg.y_bins <= 0)
                throw std::invalid_argument("archive needs at least one bin per axis");
            if (!(cfg.x_hi > cfg.x_lo) || !(cfg.y_hi > cfg.y_lo))
                throw std::invalid_argument("archive ranges must be non-empty");
            if (!(cfg.learning_rate >= 0.0 && cfg.learning_rate <= 1.0))
                throw std::invalid_argument("archive learning rate must lie in [0, 1]");
        }

        const ArchiveConfig& config() const { return _cfg; }

        std::size_t flat(CellIndex c) const { return static_cast<std::size_t>(c.xi) * _cfg.y_bins + static_cast<std::size_t>(c.yi); }
        CellIndex unflat(std::size_t i) const { return {static_cast<int>(i / _cfg.y_bins), static_cast<int>(i % _cfg.y_bins)}; }

        CellIndex index_of(double mx, double my) const { return rocketqd::index_of(mx, my, _cfg); }

        InsertResult insert(const Solution& s)
        {
            const std::size_t cell = flat(index_of(s.measure_x, s.measure_y));
            const double old = _thresholds[cell];
            InsertResult r;
            if (!std::isfinite(s.fitness)) {
                r.error = true;
                r.value = 0.0;
                return r;
            }
            r.value = s.fitness - old;
            if (!(s.fitness > old)) {
                r.status = InsertStatus::Rejected;
                return r;
            }
            const double a = _cfg.learning_rate;
            _thresholds[cell] = (1.0 - a) * old + a * s.fitness;
            auto& slot = _cells[cell];
            if (!slot) {
                r.status = InsertStatus::NewCell;
                slot = s;
                _occupied.push_back(cell);
            } else {
                r.status = InsertStatus::Improved;
                if (s.fitness > slot->fitness)
                    slot = s;
            }
            return r;
        }

        /// Places an elite directly, bypassing acceptance. Used when loading and merging.
        void set_cell(CellIndex c, const Solution& s, double threshold)
        {
            const std::size_t cell = flat(c);
            auto& slot = _cells[cell];
            if (!slot)
                _occupied.push_back(cell);
            slot = s;
            _thresholds[cell] = threshold;
        }

        const std::optional<Solution>& at(CellIndex c) const { return _cells[flat(c)]; }
        double threshold(CellIndex c) const { return _thresholds[flat(c)]; }

        std::size_t occupied_count() const { return _occupied.size(); }
        bool empty() const { return _occupied.empty(); }

        /// Flat indices of occupied cells in first-occupied order.
        const std::vector<std::size_t>& occupied_cells() const { return _occupied; }

        /// Sum of occupant fitness, accumulated in cell order.
        double qd_score() const
        {
            double s = 0.0;
            for (const auto& c : _cells)
                if (c)
                    s += c->fitness;
            return s;
        }

        const Solution& occupant_by_rank(std::size_t k) const { return *_cells[_occupied.at(k)]; }

        template <typename Fn>
        void for_each_occupied(Fn&& fn) const
        {
            for (std::size_t i = 0; i < _cells.size(); ++i)
                if (_cells[i])
                    fn(unflat(i), *_cells[i], _thresholds[i]);
        }

        friend bool operator==(const GridArchive& a, const GridArchive& b)
        {
            return a._cfg.same_grid(b._cfg) && a._cfg.learning_rate == b._cfg.learning_rate && a._cells == b._cells
                && a._thresholds == b._thresholds;
        }

    private:
        ArchiveConfig _cfg;
        std::vector<std::optional<Solution>> _cells;
        std::vector<double> _thresholds;
        std::vector<std::size_t> _occupied;
    };

    inline std::size_t occupied_count(const GridArchive& a) { return a.occupied_count(); }
    inline double qd_score(const GridArchive& a) { return a.qd_score(); }

    namespace detail {
        template <typename Range>
        void require_same_grid(const Range& archives)
        {
            const GridArchive* first = nullptr;
            for (const GridArchive& a : archives) {
                if (!first)
                    first = &a;
                else if (!first->config().same_grid(a.config()))
                    throw std::invalid_argument("archives have mismatched grid configurations");
            }
        }
    } // namespace detail

    /// Elitist union: each cell keeps the fittest occupant across inputs (first wins ties).
    inline GridArchive merge(const std::vector<GridArchive>& archives)
    {
        if (archives.empty())
            return GridArchive{};
        detail::require_same_grid(archives);
        ArchiveConfig cfg = archives.front().config();
        cfg.learning_rate = 1.0;
        GridArchive out(cfg);
        for (const auto& a : archives)
            a.for_each_occupied([&](CellIndex c, const Solution& s, double) {
                const auto& cur = out.at(c);
                if (!cur || s.fitness > cur->fitness)
                    out.set_cell(c, s, s.fitness);
            });
        return out;
    }

    /// Per cell, bit i is set when archive i occupies it.
    inline std::vector<std::uint32_t> coverage_categories(const std::vector<GridArchive>& archives)
    {
        if (archives.size() > 32)
            throw std::invalid_argument("coverage categories support at most 32 archives");
        if (archives.empty())
            return {};
        detail::require_same_grid(archives);
        std::vector<std::uint32_t> mask(archives.front().config().cell_count(), 0);
        for (std::size_t i = 0; i < archives.size(); ++i)
            for (std::size_t cell : archives[i].occupied_cells())
                mask[cell] |= (1u << i);
        return mask;
    }

    /// Per cell, how many archives occupy it.
    inline std::vector<int> occupancy_counts(const std::vector<GridArchive>& archives)
    {
        if (archives.empty())
            return {};
        detail::require_same_grid(archives);
        std::vector<int> counts(archives.front().config().cell_count(), 0);
        for (const auto& a : archives)
            for (std::size_t cell : a.occupied_cells())
                ++counts[cell];
        return counts;
    }

} // namespace rocketqd

#endif
