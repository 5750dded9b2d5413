#ifndef ROCKETQD_EXPERIMENT_EVALUATOR_HPP
#define ROCKETQD_EXPERIMENT_EVALUATOR_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <vector>

#include <rocketqd/emitters/scheduler.hpp>
#include <rocketqd/qd/archive.hpp>
#include <rocketqd/sim/evaluate.hpp>

namespace rocketqd {

    inline Solution to_solution(const Genome& g, const Evaluation& ev)
    {
        Solution s;
        s.genome = g;
        s.fitness = ev.fitness;
        s.measure_x = ev.measure_x;
        s.measure_y = ev.measure_y;
        s.meta.nose_type = ev.nose_index;
        s.meta.stability = ev.calibers;
        s.meta.altitudes = ev.altitudes;
        return s;
    }

    /// Evaluates a generation of genomes. Seeds depend only on (run seed, generation,
    /// position in the generation), so results do not depend on the worker count.
    class GenerationEvaluator {
    public:
        GenerationEvaluator(ModelConfig model, std::uint64_t run_seed, unsigned workers = 1)
            : _model(std::move(model)), _run_seed(run_seed), _workers(std::max(1u, workers))
        {
        }

        EvaluatedSolution evaluate_one(const Genome& g, int generation, std::size_t index) const
        {
            const auto seeds = derive_wind_seeds(_run_seed, static_cast<std::uint64_t>(generation), index);
            try {
                const Evaluation ev = evaluate(g, seeds, _model);
                return {to_solution(g, ev), ev.failed};
            } catch (const std::exception&) {
                // fall back to the decoded nose type at zero altitude and zero fitness
                Evaluation ev;
                ev.nose_index = nose_index(decode(g).nose.type);
                ev.measure_x = nose_stability_measure(ev.nose_index, 0.0);
                return {to_solution(g, ev), true};
            }
        }

        std::vector<EvaluatedSolution> operator()(std::span<const Genome> genomes, int generation) const
        {
            std::vector<EvaluatedSolution> out(genomes.size());
            const unsigned workers = std::min<unsigned>(_workers, static_cast<unsigned>(std::max<std::size_t>(1, genomes.size())));
            if (workers <= 1) {
                for (std::size_t k = 0; k < genomes.size(); ++k)
                    out[k] = evaluate_one(genomes[k], generation, k);
                return out;
            }
            {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back([&, w] {
                        for (std::size_t k = w; k < genomes.size(); k += workers)
                            out[k] = evaluate_one(genomes[k], generation, k);
                    });
            }
            return out;
        }

        const ModelConfig& model() const { return _model; }

    private:
        ModelConfig _model;
        std::uint64_t _run_seed;
        unsigned _workers;
    };

} // namespace rocketqd

#endif
