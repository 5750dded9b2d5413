#ifndef ROCKETQD_EMITTERS_SCHEDULER_HPP
#define ROCKETQD_EMITTERS_SCHEDULER_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include <rocketqd/emitters/emitters.hpp>
#include <rocketqd/qd/archive.hpp>

namespace rocketqd {

    struct EmitterTally {
        int new_cells = 0;
        int improved = 0;
        int rejected = 0;

        int total() const { return new_cells + improved + rejected; }
        void count(InsertStatus s)
        {
            switch (s) {
            case InsertStatus::NewCell: ++new_cells; break;
            case InsertStatus::Improved: ++improved; break;
            case InsertStatus::Rejected: ++rejected; break;
            }
        }
    };

    struct GenerationLog {
        int generation = 0;
        std::vector<EmitterTally> tallies;
        std::size_t occupied_count = 0;
        double qd_score = 0.0;
        int failures = 0; // solutions the evaluator flagged or that could not be inserted

        int evaluations() const
        {
            int n = 0;
            for (const auto& t : tallies)
                n += t.total();
            return n;
        }
    };

    /// Evaluated solution plus whether the evaluator had to fall back.
    struct EvaluatedSolution {
        Solution solution;
        bool failed = false;
    };

    /// One generation: every emitter asks its batch, the whole generation is evaluated in
    /// one call (the evaluator may parallelize), solutions are inserted in emitter-major
    /// order, and each CMA emitter is told the ranking of its own batch.
    ///
    /// `evaluate(std::span<const Genome>, int generation)` must return one
    /// EvaluatedSolution per genome, in order.
    template <typename BatchEvaluator>
    GenerationLog scheduler_step(std::vector<Emitter>& emitters, GridArchive& archive, BatchEvaluator&& evaluate, int generation)
    {
        std::vector<Genome> genomes;
        std::vector<std::size_t> offsets;
        for (auto& e : emitters) {
            offsets.push_back(genomes.size());
            auto batch = e.ask(archive);
            genomes.insert(genomes.end(), batch.begin(), batch.end());
        }
        offsets.push_back(genomes.size());

        const std::vector<EvaluatedSolution> evaluated = evaluate(std::span<const Genome>(genomes), generation);
        if (evaluated.size() != genomes.size())
            throw std::logic_error("evaluator returned the wrong number of solutions");

        GenerationLog log;
        log.generation = generation;
        log.tallies.resize(emitters.size());
        std::vector<InsertResult> results(genomes.size());
        for (std::size_t k = 0; k < genomes.size(); ++k) {
            Solution s = evaluated[k].solution;
            if (evaluated[k].failed)
                ++log.failures;
            results[k] = archive.insert(s);
            if (results[k].error) {
                ++log.failures;
                s.fitness = 0.0;
                results[k] = archive.insert(s);
            }
        }

        for (std::size_t e = 0; e < emitters.size(); ++e) {
            const auto lo = offsets[e];
            const auto n = offsets[e + 1] - lo;
            for (std::size_t k = lo; k < lo + n; ++k)
                log.tallies[e].count(results[k].status);
            emitters[e].tell(archive, std::span<const Genome>(genomes).subspan(lo, n), std::span<const InsertResult>(results).subspan(lo, n));
        }
        log.occupied_count = archive.occupied_count();
        log.qd_score = archive.qd_score();
        return log;
    }

} // namespace rocketqd

#endif
