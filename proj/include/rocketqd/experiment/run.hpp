#ifndef ROCKETQD_EXPERIMENT_RUN_HPP
#define ROCKETQD_EXPERIMENT_RUN_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <rocketqd/emitters/emitters.hpp>
#include <rocketqd/emitters/scheduler.hpp>
#include <rocketqd/experiment/evaluator.hpp>
#include <rocketqd/experiment/heatmap.hpp>
#include <rocketqd/io/csv.hpp>
#include <rocketqd/qd/archive.hpp>
#include <rocketqd/qd/archive_io.hpp>

namespace rocketqd {

    enum class Algorithm { MapElites, CmaMe, CmaMae };

    constexpr std::string_view algorithm_name(Algorithm a)
    {
        switch (a) {
        case Algorithm::MapElites: return "map-elites";
        case Algorithm::CmaMe: return "cma-me";
        case Algorithm::CmaMae: return "cma-mae";
        }
        return "unknown";
    }

    inline Algorithm parse_algorithm(std::string_view s)
    {
        if (s == "map-elites")
            return Algorithm::MapElites;
        if (s == "cma-me")
            return Algorithm::CmaMe;
        if (s == "cma-mae")
            return Algorithm::CmaMae;
        throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
    }

    inline EmitterKind emitter_kind_for(Algorithm a)
    {
        switch (a) {
        case Algorithm::MapElites: return EmitterKind::Gaussian;
        case Algorithm::CmaMe: return EmitterKind::Cma2Imp;
        case Algorithm::CmaMae: return EmitterKind::CmaImp;
        }
        throw std::invalid_argument("unknown algorithm");
    }

    inline double default_learning_rate(Algorithm a) { return a == Algorithm::CmaMae ? 0.01 : 1.0; }

    struct RunConfig {
        Algorithm algorithm = Algorithm::MapElites;
        int generations = 300;
        int solutions_per_gen = 37;
        int emitters = 10;
        double sigma0 = 0.5;
        std::optional<double> learning_rate; // defaults by algorithm
        int log_every = 20;
        std::uint64_t seed = 0;
        std::string out_dir = "runs";
        unsigned workers = 1; // does not affect results
        ModelConfig model;

        double effective_learning_rate() const { return learning_rate.value_or(default_learning_rate(algorithm)); }

        void validate() const
        {
            if (generations < 1 || solutions_per_gen < 1 || emitters < 1 || log_every < 1)
                throw std::invalid_argument("run counts must be positive");
            if (solutions_per_gen < emitters)
                throw std::invalid_argument("need at least one solution per emitter per generation");
            const double a = effective_learning_rate();
            if (!(a >= 0.0 && a <= 1.0))
                throw std::invalid_argument("learning rate must lie in [0, 1]");
            if (!(sigma0 > 0.0))
                throw std::invalid_argument("sigma0 must be positive");
        }

        std::filesystem::path run_dir() const
        {
            return std::filesystem::path(out_dir) / std::string(algorithm_name(algorithm)) / std::to_string(seed);
        }
    };

    /// Serializable run settings. Worker count and output directory are omitted so the
    /// file is identical for reproducible runs.
    inline nlohmann::json run_config_json(const RunConfig& c)
    {
        nlohmann::json j;
        j["algorithm"] = std::string(algorithm_name(c.algorithm));
        j["generations"] = c.generations;
        j["solutions_per_gen"] = c.solutions_per_gen;
        j["emitters"] = c.emitters;
        j["sigma0"] = c.sigma0;
        j["learning_rate"] = c.effective_learning_rate();
        j["log_every"] = c.log_every;
        j["seed"] = c.seed;
        j["materials"] = c.model.materials;
        j["drag"] = c.model.drag;
        j["dt"] = c.model.sim.dt;
        j["motor"] = c.model.motor.name;
        return j;
    }

    /// Applies the keys present in `j` on top of `c`.
    inline void apply_run_config_json(RunConfig& c, const nlohmann::json& j)
    {
        if (j.contains("algorithm"))
            c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        c.generations = j.value("generations", c.generations);
        c.solutions_per_gen = j.value("solutions_per_gen", c.solutions_per_gen);
        c.emitters = j.value("emitters", c.emitters);
        c.sigma0 = j.value("sigma0", c.sigma0);
        if (j.contains("learning_rate"))
            c.learning_rate = j.at("learning_rate").get<double>();
        c.log_every = j.value("log_every", c.log_every);
        c.seed = j.value("seed", c.seed);
        c.out_dir = j.value("out", c.out_dir);
        c.workers = j.value("workers", c.workers);
        if (j.contains("materials"))
            c.model.materials = j.at("materials").get<Materials>();
        if (j.contains("drag"))
            c.model.drag = j.at("drag").get<DragCalibration>();
        c.model.sim.dt = j.value("dt", c.model.sim.dt);
        if (j.contains("motor_file"))
            c.model.motor = load_motor(j.at("motor_file").get<std::string>());
    }

    inline std::string log_csv_header(int emitters)
    {
        std::string h = "generation,evaluations,occupied_count,qd_score,new_cells,improved,rejected,failures";
        for (int e = 0; e < emitters; ++e) {
            const auto p = "e" + std::to_string(e);
            h += "," + p + "_new," + p + "_improved," + p + "_rejected";
        }
        return h;
    }

    inline std::string log_csv_row(const GenerationLog& log)
    {
        EmitterTally sum;
        for (const auto& t : log.tallies) {
            sum.new_cells += t.new_cells;
            sum.improved += t.improved;
            sum.rejected += t.rejected;
        }
        std::string row = csv::row(csv::fmt(log.generation), csv::fmt(log.evaluations()), csv::fmt(log.occupied_count),
            csv::fmt(log.qd_score), csv::fmt(sum.new_cells), csv::fmt(sum.improved), csv::fmt(sum.rejected), csv::fmt(log.failures));
        for (const auto& t : log.tallies)
            row += "," + csv::fmt(t.new_cells) + "," + csv::fmt(t.improved) + "," + csv::fmt(t.rejected);
        return row;
    }

    inline std::string snapshot_name(int generation)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "archive_gen_%04d.csv", generation);
        return buf;
    }

    struct RunResult {
        GridArchive archive;
        std::vector<GenerationLog> logs;
        std::filesystem::path dir;
    };

    /// Runs one experiment. When `write_outputs` is set, writes into run_dir():
    /// config.json, log.csv (one row per generation, flushed as it goes),
    /// archive_gen_NNNN.csv every `log_every` generations, archive_final.csv and
    /// heatmap_final.svg.
    /// Generation numbers in outputs are 1-based.
    inline RunResult run(const RunConfig& cfg, bool write_outputs = true)
    {
        cfg.validate();
        ArchiveConfig acfg;
        acfg.learning_rate = cfg.effective_learning_rate();
        RunResult result{GridArchive(acfg), {}, cfg.run_dir()};

        std::ofstream log_file;
        if (write_outputs) {
            std::filesystem::create_directories(result.dir);
            std::ofstream cfg_file(result.dir / "config.json", std::ios::binary);
            cfg_file << run_config_json(cfg).dump(2) << '\n';
            if (!cfg_file)
                throw std::runtime_error("cannot write config to " + result.dir.string());
            log_file.open(result.dir / "log.csv", std::ios::binary);
            if (!log_file)
                throw std::runtime_error("cannot write log to " + result.dir.string());
            log_file << log_csv_header(cfg.emitters) << '\n';
        }

        auto emitters = make_emitters(emitter_kind_for(cfg.algorithm), cfg.emitters, cfg.solutions_per_gen, cfg.sigma0, cfg.seed);
        const GenerationEvaluator evaluator(cfg.model, cfg.seed, cfg.workers);

        for (int g = 0; g < cfg.generations; ++g) {
            GenerationLog log = scheduler_step(emitters, result.archive, evaluator, g);
            log.generation = g + 1;
            if (write_outputs) {
                log_file << log_csv_row(log) << '\n';
                log_file.flush();
                if (!log_file)
                    throw std::runtime_error("failed writing log.csv");
                if (log.generation % cfg.log_every == 0)
                    save_archive((result.dir / snapshot_name(log.generation)).string(), result.archive);
            }
            result.logs.push_back(std::move(log));
        }
        if (write_outputs) {
            save_archive((result.dir / "archive_final.csv").string(), result.archive);
            save_svg((result.dir / "heatmap_final.svg").string(),
                fitness_heatmap(result.archive, std::string(algorithm_name(cfg.algorithm)) + " seed " + std::to_string(cfg.seed)));
        }
        return result;
    }

    struct LogRow {
        int generation = 0;
        double occupied_count = 0.0;
        double qd_score = 0.0;
    };

    inline std::vector<LogRow> read_log_csv(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open " + path.string());
        std::string line;
        std::getline(in, line);
        std::vector<LogRow> rows;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            const auto f = csv::split(line);
            if (f.size() < 4)
                throw std::invalid_argument("malformed log row in " + path.string());
            rows.push_back({static_cast<int>(csv::to_int(f[0])), csv::to_double(f[2]), csv::to_double(f[3])});
        }
        return rows;
    }

} // namespace rocketqd

#endif
