#ifndef ROCKETQD_EXPERIMENT_SELECT_HPP
#define ROCKETQD_EXPERIMENT_SELECT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <rocketqd/qd/archive.hpp>
#include <rocketqd/rocket/barrowman.hpp>
#include <rocketqd/rocket/design.hpp>

namespace rocketqd {

    inline constexpr std::array<double, 4> kTargetAltitudes{80.0, 70.0, 60.0, 50.0};

    struct Candidate {
        double target = 0.0;
        int nose_type = 0;
        CellIndex cell;
        Solution solution;
    };

    using CandidateSet = std::vector<Candidate>;

    /// For each target and nose type, the stable rocket whose mean apogee is closest to the
    /// target from below. Ties go to higher fitness, then the lower cell index.
    /// Order: targets as listed in kTargetAltitudes, nose types ascending.
    inline CandidateSet select_candidates(const GridArchive& archive)
    {
        CandidateSet out;
        for (const double target : kTargetAltitudes) {
            for (int k = 0; k < kNoseTypeCount; ++k) {
                std::optional<std::size_t> best;
                for (const std::size_t flat : archive.occupied_cells()) {
                    const Solution& s = *archive.at(archive.unflat(flat));
                    if (s.meta.nose_type != k || !(s.meta.stability >= kMinStableCalibers) || !(s.measure_y < target))
                        continue;
                    if (!best) {
                        best = flat;
                        continue;
                    }
                    const Solution& b = *archive.at(archive.unflat(*best));
                    const bool better = s.measure_y > b.measure_y ||
                        (s.measure_y == b.measure_y && (s.fitness > b.fitness || (s.fitness == b.fitness && flat < *best)));
                    if (better)
                        best = flat;
                }
                if (best)
                    out.push_back({target, k, archive.unflat(*best), *archive.at(archive.unflat(*best))});
            }
        }
        return out;
    }

} // namespace rocketqd

#endif
