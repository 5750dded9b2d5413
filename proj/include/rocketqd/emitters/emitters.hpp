#ifndef ROCKETQD_EMITTERS_EMITTERS_HPP
#define ROCKETQD_EMITTERS_EMITTERS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <rocketqd/cma/cma_es.hpp>
#include <rocketqd/emitters/ranking.hpp>
#include <rocketqd/qd/archive.hpp>
#include <rocketqd/util/seed.hpp>

namespace rocketqd {

    enum class EmitterKind { Gaussian, Cma2Imp, CmaImp };

    constexpr std::string_view emitter_kind_name(EmitterKind k)
    {
        switch (k) {
        case EmitterKind::Gaussian: return "gaussian";
        case EmitterKind::Cma2Imp: return "cma-2imp";
        case EmitterKind::CmaImp: return "cma-imp";
        }
        return "unknown";
    }

    struct EmitterConfig {
        EmitterKind kind = EmitterKind::Gaussian;
        int batch = 4;
        double sigma0 = 0.5;
        std::uint64_t rng_seed = 0;
    };

    /// Children of uniformly chosen elites plus isotropic N(0, sigma^2) noise. With an
    /// empty archive the parent is the zero genome.
    template <typename Rng>
    std::vector<Genome> gaussian_ask(const GridArchive& archive, int batch, double sigma, Rng& rng)
    {
        std::vector<Genome> out;
        out.reserve(static_cast<std::size_t>(batch));
        std::normal_distribution<double> noise(0.0, 1.0);
        for (int k = 0; k < batch; ++k) {
            Genome child{};
            if (!archive.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, archive.occupied_count() - 1);
                child = archive.occupant_by_rank(pick(rng)).genome;
            }
            for (double& g : child)
                g += sigma * noise(rng);
            out.push_back(child);
        }
        return out;
    }

    /// One candidate generator feeding the shared archive. CMA kinds own a CMA-ES
    /// distribution that is updated from the ranking of their own batch only.
    class Emitter {
    public:
        explicit Emitter(const EmitterConfig& cfg) : _cfg(cfg), _rng(cfg.rng_seed)
        {
            if (cfg.batch < 1)
                throw std::invalid_argument("emitter batch must be at least 1");
            if (cfg.kind != EmitterKind::Gaussian) {
                if (cfg.batch < 2)
                    throw std::invalid_argument("CMA emitters need a batch of at least 2");
                _weights = cma::CmaWeights::standard(static_cast<int>(kGenomeSize), cfg.batch);
                _state = cma::CmaState::initial(cma::Vector::Zero(kGenomeSize), cfg.sigma0);
            }
        }

        const EmitterConfig& config() const { return _cfg; }
        int batch() const { return _cfg.batch; }
        int restarts() const { return _restarts; }
        const std::optional<cma::CmaState>& cma_state() const { return _state; }

        std::vector<Genome> ask(const GridArchive& archive)
        {
            if (_cfg.kind == EmitterKind::Gaussian)
                return gaussian_ask(archive, _cfg.batch, _cfg.sigma0, _rng);
            std::vector<cma::Vector> xs;
            try {
                xs = cma::ask(*_state, *_weights, _cfg.batch, _rng);
            } catch (const cma::RestartRequired&) {
                restart(archive);
                xs = cma::ask(*_state, *_weights, _cfg.batch, _rng);
            }
            std::vector<Genome> out(xs.size());
            for (std::size_t k = 0; k < xs.size(); ++k)
                for (std::size_t i = 0; i < kGenomeSize; ++i)
                    out[k][i] = xs[k][static_cast<Eigen::Index>(i)];
            return out;
        }

        /// `genomes` and `results` are this emitter's batch in ask order.
        void tell(const GridArchive& archive, std::span<const Genome> genomes, std::span<const InsertResult> results)
        {
            if (_cfg.kind == EmitterKind::Gaussian)
                return;
            if (genomes.size() != results.size())
                throw std::invalid_argument("tell needs one result per genome");
            const auto order = rank(_cfg.kind == EmitterKind::Cma2Imp ? RankMethod::TwoStageImprovement : RankMethod::Improvement, results);
            std::vector<cma::Vector> ranked;
            ranked.reserve(order.size());
            for (std::size_t k : order) {
                cma::Vector v(static_cast<Eigen::Index>(kGenomeSize));
                for (std::size_t i = 0; i < kGenomeSize; ++i)
                    v[static_cast<Eigen::Index>(i)] = genomes[k][i];
                ranked.push_back(std::move(v));
            }
            cma::tell(*_state, *_weights, ranked);
            if (cma::should_restart(*_state, results))
                restart(archive);
        }

    private:
        void restart(const GridArchive& archive)
        {
            cma::restart(*_state, archive, _cfg.sigma0, _rng);
            ++_restarts;
        }

        EmitterConfig _cfg;
        std::mt19937_64 _rng;
        std::optional<cma::CmaWeights> _weights;
        std::optional<cma::CmaState> _state;
        int _restarts = 0;
    };

    /// Splits `total` solutions across `count` emitters as evenly as possible, larger
    /// batches first (37 over 10 gives seven of 4 and three of 3).
    inline std::vector<int> split_batches(int total, int count)
    {
        if (count < 1 || total < count)
            throw std::invalid_argument("need at least one solution per emitter");
        std::vector<int> out(static_cast<std::size_t>(count), total / count);
        for (int i = 0; i < total % count; ++i)
            ++out[static_cast<std::size_t>(i)];
        return out;
    }

    /// Emitter i is seeded with mix_seed(run_seed, i).
    inline std::vector<Emitter> make_emitters(EmitterKind kind, int count, int total, double sigma0, std::uint64_t run_seed)
    {
        std::vector<Emitter> out;
        const auto batches = split_batches(total, count);
        for (int i = 0; i < count; ++i)
            out.emplace_back(EmitterConfig{kind, batches[static_cast<std::size_t>(i)], sigma0, mix_seed(run_seed, static_cast<std::uint64_t>(i))});
        return out;
    }

} // namespace rocketqd

#endif
