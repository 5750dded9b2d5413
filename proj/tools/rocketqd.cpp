#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <rocketqd/experiment/heatmap.hpp>
#include <rocketqd/experiment/ranksum.hpp>
#include <rocketqd/experiment/report.hpp>
#include <rocketqd/experiment/run.hpp>
#include <rocketqd/experiment/select.hpp>

namespace fs = std::filesystem;
using namespace rocketqd;

namespace {

    // A run directory stands for its final archive.
    std::string archive_path(const std::string& p)
    {
        return fs::is_directory(p) ? (fs::path(p) / "archive_final.csv").string() : p;
    }

    std::vector<GridArchive> load_all(const std::vector<std::string>& paths)
    {
        std::vector<GridArchive> out;
        for (const auto& p : paths)
            out.push_back(load_archive(archive_path(p)));
        return out;
    }

    std::string label_for(const std::string& p)
    {
        fs::path path(p);
        if (!fs::is_directory(path))
            return path.stem().string();
        return path.filename().empty() ? path.parent_path().filename().string() : path.filename().string();
    }

    Genome parse_genome(const std::string& text)
    {
        const auto fields = csv::split(text);
        if (fields.size() != kGenomeSize)
            throw std::invalid_argument("genome needs " + std::to_string(kGenomeSize) + " comma-separated values");
        Genome g{};
        for (std::size_t i = 0; i < kGenomeSize; ++i)
            g[i] = csv::to_double(fields[i]);
        return g;
    }

    void write_text(const std::string& path, const std::string& text)
    {
        if (path.empty() || path == "-") {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << text;
    }

    struct ModelFiles {
        std::string materials, drag, motor;

        void apply(ModelConfig& m) const
        {
            if (!materials.empty())
                m.materials = load_materials(materials);
            if (!drag.empty())
                m.drag = load_drag_calibration(drag);
            if (!motor.empty())
                m.motor = load_motor(motor);
        }
    };

    void add_model_options(CLI::App* cmd, ModelFiles& files)
    {
        cmd->add_option("--materials", files.materials, "materials JSON")->check(CLI::ExistingFile);
        cmd->add_option("--drag", files.drag, "drag calibration JSON")->check(CLI::ExistingFile);
        cmd->add_option("--motor", files.motor, "motor thrust-curve file")->check(CLI::ExistingFile);
    }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quality-diversity search over model rocket designs"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one search and write its outputs");
    std::string algo, config_path, out_dir;
    std::uint64_t seed = 0;
    int gens = 0;
    unsigned workers = 0;
    ModelFiles run_files;
    run_cmd->add_option("--algo", algo, "map-elites | cma-me | cma-mae")->check(CLI::IsMember({"map-elites", "cma-me", "cma-mae"}));
    run_cmd->add_option("--seed", seed, "run seed");
    run_cmd->add_option("--gens", gens, "generations");
    run_cmd->add_option("--out", out_dir, "output root");
    run_cmd->add_option("--config", config_path, "JSON run configuration; flags given on the command line take precedence")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--workers", workers, "evaluation threads (results do not depend on this)");
    add_model_options(run_cmd, run_files);

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "per-run occupied cells and QD score as CSV");
    std::vector<std::string> metric_runs;
    bool per_generation = false;
    metrics_cmd->add_option("--runs", metric_runs, "run directories")->required()->check(CLI::ExistingDirectory);
    metrics_cmd->add_flag("--per-generation", per_generation, "one row per logged generation instead of the final row");

    // merge
    auto* merge_cmd = app.add_subcommand("merge", "elitist union of several archives");
    std::string merge_out;
    std::vector<std::string> merge_inputs;
    merge_cmd->add_option("--out", merge_out, "merged archive CSV")->required();
    merge_cmd->add_option("inputs", merge_inputs, "run directories or archive CSVs")->required()->check(CLI::ExistingPath);

    // counts
    auto* counts_cmd = app.add_subcommand("counts", "per-cell number of archives that occupy it");
    std::string counts_out;
    std::vector<std::string> counts_inputs;
    counts_cmd->add_option("--out", counts_out, "CSV output (default stdout)");
    counts_cmd->add_option("inputs", counts_inputs, "run directories or archive CSVs")->required()->check(CLI::ExistingPath);

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "rank-sum test between two groups of runs at each logged generation");
    std::vector<std::string> group_a, group_b;
    std::string metric = "occupied_count";
    int every = 20;
    compare_cmd->add_option("--a", group_a, "first group of run directories")->required()->check(CLI::ExistingDirectory);
    compare_cmd->add_option("--b", group_b, "second group of run directories")->required()->check(CLI::ExistingDirectory);
    compare_cmd->add_option("--metric", metric, "occupied_count | qd_score")->check(CLI::IsMember({"occupied_count", "qd_score"}));
    compare_cmd->add_option("--every", every, "generation interval")->check(CLI::PositiveNumber);

    // select
    auto* select_cmd = app.add_subcommand("select", "pick build candidates for the 80/70/60/50 m targets");
    std::string select_archive, select_out, reports_dir;
    ModelFiles select_files;
    select_cmd->add_option("--archive", select_archive, "archive CSV or run directory")->required()->check(CLI::ExistingPath);
    select_cmd->add_option("--out", select_out, "CSV output (default stdout)");
    select_cmd->add_option("--reports", reports_dir, "write one design report per candidate into this directory");
    add_model_options(select_cmd, select_files);

    // heatmap
    auto* heat_cmd = app.add_subcommand("heatmap", "render archives as an SVG grid");
    std::vector<std::string> heat_inputs, heat_names;
    std::string mode = "fitness", heat_out;
    heat_cmd->add_option("--archive", heat_inputs, "archive CSV or run directory (repeat for category/counts)")
        ->required()
        ->check(CLI::ExistingPath);
    heat_cmd->add_option("--mode", mode, "fitness | category | counts")->check(CLI::IsMember({"fitness", "category", "counts"}));
    heat_cmd->add_option("--names", heat_names, "legend names for category mode")->delimiter(',');
    heat_cmd->add_option("--out", heat_out, "SVG output (default stdout)");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "evaluate one genome and optionally dump a trajectory");
    std::string genome_text, trace_path;
    std::uint64_t sim_seed = 0;
    int condition = 0;
    ModelFiles sim_files;
    sim_cmd->add_option("--genome", genome_text, "g0,...,g10")->required();
    sim_cmd->add_option("--trace", trace_path, "trajectory CSV (t,x,z,u,w,mass)");
    sim_cmd->add_option("--seed", sim_seed, "wind seed");
    sim_cmd->add_option("--condition", condition, "wind condition for the trace")->check(CLI::Range(0, 2));
    add_model_options(sim_cmd, sim_files);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            RunConfig cfg;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                apply_run_config_json(cfg, nlohmann::json::parse(in));
            }
            if (run_cmd->count("--algo"))
                cfg.algorithm = parse_algorithm(algo);
            if (run_cmd->count("--seed"))
                cfg.seed = seed;
            if (run_cmd->count("--gens"))
                cfg.generations = gens;
            if (run_cmd->count("--out"))
                cfg.out_dir = out_dir;
            if (run_cmd->count("--workers"))
                cfg.workers = workers;
            run_files.apply(cfg.model);
            const RunResult r = run(cfg);
            std::cout << r.dir.string() << ": occupied " << r.archive.occupied_count() << ", qd_score " << csv::fmt(r.archive.qd_score())
                      << '\n';
        } else if (*metrics_cmd) {
            std::cout << "run,generation,occupied_count,qd_score\n";
            for (const auto& dir : metric_runs) {
                const auto rows = read_log_csv(fs::path(dir) / "log.csv");
                if (rows.empty())
                    continue;
                const auto emit = [&](const LogRow& r) {
                    std::cout << csv::row(dir, csv::fmt(r.generation), csv::fmt(r.occupied_count), csv::fmt(r.qd_score)) << '\n';
                };
                if (per_generation)
                    std::for_each(rows.begin(), rows.end(), emit);
                else
                    emit(rows.back());
            }
        } else if (*merge_cmd) {
            const GridArchive merged = merge(load_all(merge_inputs));
            save_archive(merge_out, merged);
            std::cout << merge_out << ": occupied " << merged.occupied_count() << ", qd_score " << csv::fmt(merged.qd_score()) << '\n';
        } else if (*counts_cmd) {
            const auto archives = load_all(counts_inputs);
            const auto counts = occupancy_counts(archives);
            const GridArchive& grid = archives.front();
            std::string text = "xi,yi,count\n";
            for (std::size_t i = 0; i < counts.size(); ++i) {
                const CellIndex c = grid.unflat(i);
                text += csv::row(csv::fmt(c.xi), csv::fmt(c.yi), csv::fmt(counts[i])) + '\n';
            }
            write_text(counts_out, text);
        } else if (*compare_cmd) {
            const auto collect = [&](const std::vector<std::string>& dirs) {
                std::map<int, std::vector<double>> by_gen;
                for (const auto& d : dirs)
                    for (const auto& r : read_log_csv(fs::path(d) / "log.csv"))
                        by_gen[r.generation].push_back(metric == "qd_score" ? r.qd_score : r.occupied_count);
                return by_gen;
            };
            const auto a = collect(group_a), b = collect(group_b);
            const int last = a.empty() ? 0 : a.rbegin()->first;
            std::cout << "generation,n_a,n_b,median_a,median_b,u,z,p_value\n";
            const auto median = [](std::vector<double> v) {
                std::sort(v.begin(), v.end());
                const auto n = v.size();
                return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
            };
            for (const auto& [gen, va] : a) {
                if (gen % every != 0 && gen != last)
                    continue;
                const auto it = b.find(gen);
                if (it == b.end())
                    continue;
                const RankSumResult r = rank_sum_test(va, it->second);
                std::cout << csv::row(csv::fmt(gen), csv::fmt(va.size()), csv::fmt(it->second.size()), csv::fmt(median(va)),
                                 csv::fmt(median(it->second)), csv::fmt(r.u), csv::fmt(r.z), csv::fmt(r.p_value))
                          << '\n';
            }
        } else if (*select_cmd) {
            const GridArchive archive = load_archive(archive_path(select_archive));
            const CandidateSet set = select_candidates(archive);
            std::string text = "target,nose_type,xi,yi,measure_y,fitness,stability";
            for (std::size_t i = 0; i < kGenomeSize; ++i)
                text += ",genome_" + std::to_string(i);
            text += '\n';
            ModelConfig model;
            select_files.apply(model);
            if (!reports_dir.empty())
                fs::create_directories(reports_dir);
            for (const auto& c : set) {
                const std::string nose(nose_type_name(nose_type_from_index(c.nose_type)));
                text += csv::row(csv::fmt(c.target), nose, csv::fmt(c.cell.xi), csv::fmt(c.cell.yi), csv::fmt(c.solution.measure_y),
                    csv::fmt(c.solution.fitness), csv::fmt(c.solution.meta.stability));
                for (double g : c.solution.genome)
                    text += "," + csv::fmt(g);
                text += '\n';
                if (!reports_dir.empty()) {
                    std::ofstream rep(fs::path(reports_dir) / (std::to_string(static_cast<int>(c.target)) + "m_" + nose + ".txt"));
                    rep << "target: " << csv::fmt(c.target) << "\nmean_apogee: " << csv::fmt(c.solution.measure_y)
                        << "\nfitness: " << csv::fmt(c.solution.fitness) << '\n';
                    write_design_report(rep, c.solution.genome, model);
                }
            }
            write_text(select_out, text);
        } else if (*heat_cmd) {
            const auto archives = load_all(heat_inputs);
            HeatmapImage img;
            if (mode == "fitness") {
                if (archives.size() != 1)
                    throw std::invalid_argument("fitness mode takes exactly one archive");
                img = fitness_heatmap(archives.front(), label_for(heat_inputs.front()));
            } else if (mode == "category") {
                std::vector<std::string> names = heat_names;
                if (names.empty())
                    for (const auto& p : heat_inputs)
                        names.push_back(label_for(p));
                if (names.size() != archives.size())
                    throw std::invalid_argument("--names must list one name per archive");
                img = category_heatmap(archives.front().config(), coverage_categories(archives), names);
            } else {
                img = counts_heatmap(archives.front().config(), occupancy_counts(archives), static_cast<int>(archives.size()));
            }
            write_text(heat_out, render_svg(img));
        } else if (*sim_cmd) {
            const Genome g = parse_genome(genome_text);
            ModelConfig model;
            sim_files.apply(model);
            const auto seeds = derive_wind_seeds(sim_seed, 0, 0);
            const Evaluation ev = evaluate(g, seeds, model);
            write_design_report(std::cout, g, model);
            std::cout << "altitudes: " << csv::fmt(ev.altitudes[0]) << "," << csv::fmt(ev.altitudes[1]) << "," << csv::fmt(ev.altitudes[2])
                      << "\nmean_apogee: " << csv::fmt(ev.measure_y) << "\nfitness: " << csv::fmt(ev.fitness)
                      << "\nmeasure_x: " << csv::fmt(ev.measure_x) << "\nfailed: " << (ev.failed ? "yes" : "no") << '\n';
            if (!trace_path.empty()) {
                const RocketDesign d = decode(g);
                const MassProperties mass = mass_properties(d, model.materials, model.motor);
                SimOptions opt = model.sim;
                opt.record_trajectory = true;
                WindTrace wind(model.winds[static_cast<std::size_t>(condition)], seeds[static_cast<std::size_t>(condition)]);
                const SimOutcome o = simulate(flight_params(d, mass, model), model.motor, wind, opt);
                std::ofstream out(trace_path, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write " + trace_path);
                out << "t,x,z,u,w,mass\n";
                for (const auto& s : o.trajectory)
                    out << csv::row(csv::fmt(s.t), csv::fmt(s.x), csv::fmt(s.z), csv::fmt(s.u), csv::fmt(s.w), csv::fmt(s.mass)) << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
