#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <rocketqd/emitters/emitters.hpp>
#include <rocketqd/emitters/ranking.hpp>
#include <rocketqd/emitters/scheduler.hpp>

using namespace rocketqd;

namespace {

    InsertResult res(InsertStatus s, double v) { return {s, v, false}; }

    std::vector<InsertResult> random_results(std::mt19937_64& rng, std::size_t n)
    {
        std::uniform_int_distribution<int> status(0, 2);
        std::uniform_int_distribution<int> value(-5, 5); // small range forces ties
        std::vector<InsertResult> out;
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(res(static_cast<InsertStatus>(status(rng)), value(rng) * 0.5));
        return out;
    }

    bool is_permutation_of_indices(const std::vector<std::size_t>& order, std::size_t n)
    {
        if (order.size() != n)
            return false;
        std::vector<std::size_t> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i)
            if (sorted[i] != i)
                return false;
        return true;
    }

    // Synthetic evaluator: measures and fitness are smooth functions of the genome.
    struct ToyEvaluator {
        std::vector<EvaluatedSolution> operator()(std::span<const Genome> genomes, int) const
        {
            std::vector<EvaluatedSolution> out;
            for (const auto& g : genomes) {
                Solution s;
                s.genome = g;
                s.measure_x = 7.5 + 3.0 * std::tanh(g[0]);
                s.measure_y = 45.0 + 30.0 * std::tanh(g[1]);
                double sq = 0.0;
                for (double v : g)
                    sq += v * v;
                s.fitness = 40.0 * std::exp(-0.05 * sq);
                out.push_back({s, false});
            }
            return out;
        }
    };

} // namespace

TEST(GaussianAsk, EmptyArchiveStatistics)
{
    std::mt19937_64 rng(10);
    const GridArchive empty;
    const auto children = gaussian_ask(empty, 10000, 0.5, rng);
    ASSERT_EQ(children.size(), 10000u);
    for (std::size_t i = 0; i < kGenomeSize; ++i) {
        double sum = 0.0, sq = 0.0;
        for (const auto& c : children) {
            sum += c[i];
            sq += c[i] * c[i];
        }
        const double mean = sum / 10000.0, sd = std::sqrt(sq / 10000.0 - mean * mean);
        EXPECT_NEAR(mean, 0.0, 0.02);
        EXPECT_NEAR(sd, 0.5, 0.02);
    }
}

TEST(GaussianAsk, SingleParentAndZeroNoise)
{
    std::mt19937_64 rng(1);
    GridArchive a;
    Solution s;
    s.fitness = 3.0;
    s.genome = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    a.insert(s);
    for (const auto& c : gaussian_ask(a, 50, 0.0, rng))
        EXPECT_EQ(c, s.genome);
}

TEST(Rank2Imp, Examples)
{
    {
        const std::vector<InsertResult> r{res(InsertStatus::Improved, 100.0), res(InsertStatus::NewCell, 5.0)};
        EXPECT_EQ(rank_2imp(r), (std::vector<std::size_t>{1, 0}));
    }
    {
        const std::vector<InsertResult> r{res(InsertStatus::Improved, 3.0), res(InsertStatus::Improved, 7.0)};
        EXPECT_EQ(rank_2imp(r), (std::vector<std::size_t>{1, 0}));
    }
    {
        const std::vector<InsertResult> r{res(InsertStatus::Rejected, -2.0), res(InsertStatus::Rejected, -3.0), res(InsertStatus::Rejected, -1.0)};
        EXPECT_EQ(rank_2imp(r), (std::vector<std::size_t>{2, 0, 1}));
    }
}

TEST(RankImp, Examples)
{
    {
        const std::vector<InsertResult> r{res(InsertStatus::NewCell, -0.5), res(InsertStatus::Rejected, -0.1)};
        EXPECT_EQ(rank_imp(r), (std::vector<std::size_t>{1, 0}));
    }
    {
        const std::vector<InsertResult> r{res(InsertStatus::Improved, 2.0), res(InsertStatus::NewCell, 2.0), res(InsertStatus::Rejected, 2.0)};
        EXPECT_EQ(rank_imp(r), (std::vector<std::size_t>{0, 1, 2}));
    }
    {
        const std::vector<InsertResult> r{res(InsertStatus::NewCell, 40.0), res(InsertStatus::NewCell, 0.0), res(InsertStatus::NewCell, 20.0)};
        EXPECT_EQ(rank_imp(r), (std::vector<std::size_t>{0, 2, 1}));
    }
}

TEST(Ranking, RandomizedProperties)
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::size_t> len(0, 40);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto r = random_results(rng, len(rng));
        const auto o2 = rank_2imp(r), o1 = rank_imp(r);
        ASSERT_TRUE(is_permutation_of_indices(o2, r.size()));
        ASSERT_TRUE(is_permutation_of_indices(o1, r.size()));
        for (std::size_t i = 1; i < o2.size(); ++i) {
            const auto& a = r[o2[i - 1]];
            const auto& b = r[o2[i]];
            ASSERT_LE(static_cast<int>(a.status), static_cast<int>(b.status)); // NewCell < Improved < Rejected
            if (a.status == b.status) {
                ASSERT_GE(a.value, b.value);
                if (a.value == b.value) {
                    ASSERT_LT(o2[i - 1], o2[i]);
                }
            }
        }
        for (std::size_t i = 1; i < o1.size(); ++i) {
            ASSERT_GE(r[o1[i - 1]].value, r[o1[i]].value);
            if (r[o1[i - 1]].value == r[o1[i]].value) {
                ASSERT_LT(o1[i - 1], o1[i]);
            }
        }
    }
}

TEST(Batches, ThirtySevenOverTen)
{
    const auto b = split_batches(37, 10);
    EXPECT_EQ(b, (std::vector<int>{4, 4, 4, 4, 4, 4, 4, 3, 3, 3}));
    EXPECT_THROW(split_batches(5, 10), std::invalid_argument);
}

TEST(Emitter, RejectsBadBatch)
{
    EXPECT_THROW(Emitter(EmitterConfig{EmitterKind::Gaussian, 0, 0.5, 1}), std::invalid_argument);
    EXPECT_THROW(Emitter(EmitterConfig{EmitterKind::Cma2Imp, 1, 0.5, 1}), std::invalid_argument);
}

TEST(Scheduler, ConservationAndGrowth)
{
    for (EmitterKind kind : {EmitterKind::Gaussian, EmitterKind::Cma2Imp, EmitterKind::CmaImp}) {
        ArchiveConfig cfg;
        cfg.learning_rate = kind == EmitterKind::CmaImp ? 0.01 : 1.0;
        GridArchive archive(cfg);
        auto emitters = make_emitters(kind, 10, 37, 0.5, 123);
        std::size_t prev = 0;
        for (int g = 0; g < 30; ++g) {
            const auto log = scheduler_step(emitters, archive, ToyEvaluator{}, g);
            ASSERT_EQ(log.evaluations(), 37);
            ASSERT_EQ(log.tallies.size(), 10u);
            int new_cells = 0;
            for (const auto& t : log.tallies)
                new_cells += t.new_cells;
            ASSERT_EQ(log.occupied_count, prev + static_cast<std::size_t>(new_cells));
            if (g == 0) {
                EXPECT_GT(log.occupied_count, 0u);
            }
            prev = log.occupied_count;
        }
    }
}

TEST(Scheduler, IdenticalSeedsGiveIdenticalLogs)
{
    for (EmitterKind kind : {EmitterKind::Gaussian, EmitterKind::Cma2Imp, EmitterKind::CmaImp}) {
        GridArchive a, b;
        auto ea = make_emitters(kind, 10, 37, 0.5, 9), eb = make_emitters(kind, 10, 37, 0.5, 9);
        for (int g = 0; g < 20; ++g) {
            const auto la = scheduler_step(ea, a, ToyEvaluator{}, g);
            const auto lb = scheduler_step(eb, b, ToyEvaluator{}, g);
            ASSERT_EQ(la.occupied_count, lb.occupied_count);
            ASSERT_EQ(la.qd_score, lb.qd_score);
            for (std::size_t e = 0; e < la.tallies.size(); ++e) {
                ASSERT_EQ(la.tallies[e].new_cells, lb.tallies[e].new_cells);
                ASSERT_EQ(la.tallies[e].improved, lb.tallies[e].improved);
            }
        }
        EXPECT_TRUE(a == b);
    }
}

TEST(Scheduler, NonFiniteFitnessIsReinsertedAsZero)
{
    struct Broken {
        std::vector<EvaluatedSolution> operator()(std::span<const Genome> genomes, int) const
        {
            std::vector<EvaluatedSolution> out(genomes.size());
            for (std::size_t k = 0; k < genomes.size(); ++k) {
                out[k].solution.genome = genomes[k];
                out[k].solution.fitness = std::nan("");
            }
            return out;
        }
    };
    GridArchive archive;
    auto emitters = make_emitters(EmitterKind::Cma2Imp, 10, 37, 0.5, 1);
    const auto log = scheduler_step(emitters, archive, Broken{}, 0);
    EXPECT_EQ(log.failures, 37);
    EXPECT_EQ(log.evaluations(), 37);
    EXPECT_TRUE(archive.empty());
}

TEST(Scheduler, WrongEvaluatorSizeIsAnError)
{
    struct Short {
        std::vector<EvaluatedSolution> operator()(std::span<const Genome>, int) const { return {}; }
    };
    GridArchive archive;
    auto emitters = make_emitters(EmitterKind::Gaussian, 10, 37, 0.5, 1);
    EXPECT_THROW(scheduler_step(emitters, archive, Short{}, 0), std::logic_error);
}

TEST(Emitter, AllRejectedTriggersRestart)
{
    GridArchive archive;
    Emitter e(EmitterConfig{EmitterKind::Cma2Imp, 4, 0.5, 3});
    const auto genomes = e.ask(archive);
    const std::vector<InsertResult> rejected(4, res(InsertStatus::Rejected, -1.0));
    e.tell(archive, genomes, rejected);
    EXPECT_EQ(e.restarts(), 1);
    EXPECT_DOUBLE_EQ(e.cma_state()->sigma, 0.5);
    EXPECT_EQ(e.cma_state()->generation, 0);
}
