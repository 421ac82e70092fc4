// Command-line front end: runs experiment plans, postprocesses archives,
// evaluates indicator values and turns results files into tables, rankings
// and plot data.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pbemo/pbemo.hpp"

namespace {

pbemo::Vec parse_vec(const std::string& text)
{
    pbemo::Vec out;
    for (const std::string& field : pbemo::split_csv_line(text))
        out.push_back(pbemo::parse_double(field));
    return out;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw pbemo::input_error("cannot write " + path);
    out << text;
}

struct CliOptions {
    std::string config;
    std::string out;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

int cmd_run(const CliOptions& opt, const std::string& records_dir, const std::string& archive_dir)
{
    pbemo::ExperimentPlan plan = pbemo::load_plan(opt.config);
    if (!opt.out.empty())
        plan.output_dir = opt.out;
    const std::size_t jobs =
        opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    const pbemo::ExecuteStats stats = pbemo::execute(plan, jobs);
    std::cout << "cells run: " << stats.cells_run << ", cached: " << stats.cells_skipped
              << "\nresults: " << stats.results_path << "\n";

    if (!records_dir.empty() || !archive_dir.empty()) {
        namespace fs = std::filesystem;
        if (!records_dir.empty())
            fs::create_directories(records_dir);
        if (!archive_dir.empty())
            fs::create_directories(archive_dir);
        for (const pbemo::Cell& cell : pbemo::plan_grid(plan)) {
            const pbemo::RunRecord record = pbemo::run(pbemo::cell_config(plan, cell));
            const std::string key = pbemo::cell_key(cell);
            if (!records_dir.empty()) {
                std::ofstream out(fs::path(records_dir) / (key + ".json"));
                out << pbemo::to_json(record).dump(1) << "\n";
            }
            if (!archive_dir.empty()) {
                pbemo::write_archive_json((fs::path(archive_dir) / (key + ".archive.json")).string(),
                                          record.final_archive);
                std::vector<pbemo::Vec> fs_rows;
                for (const pbemo::Solution& s : record.final_archive)
                    fs_rows.push_back(s.f);
                pbemo::write_objectives_csv((fs::path(archive_dir) / (key + ".archive.csv")).string(),
                                            fs_rows, false,
                                            static_cast<std::size_t>(cell.m));
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Preference-based EMO benchmarking toolkit"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config, "plan file (.json or TOML-style)");
    app.add_option("--out", opt.out, "output directory or file prefix");
    app.add_option("--seed", opt.seed, "seed for subset-selection randomness");
    app.add_option("-j,--jobs", opt.jobs, "worker threads (0 = hardware)");

    // run
    auto* run_cmd = app.add_subcommand("run", "execute an experiment plan");
    std::string records_dir;
    std::string archive_dir;
    run_cmd->add_option("--records-dir", records_dir, "also dump full run records (JSON)");
    run_cmd->add_option("--archive-dir", archive_dir, "also dump final archives (JSON + CSV)");

    // postprocess
    auto* pp_cmd = app.add_subcommand("postprocess", "select a subset from an archive file");
    std::string pp_in;
    std::string pp_method = "pp";
    std::size_t pp_k = 100;
    std::size_t pp_tmax = 10000;
    double pp_r = 0.1;
    std::string pp_z;
    pp_cmd->add_option("--in", pp_in, "archive file (.json or .csv)")->required();
    pp_cmd->add_option("--method", pp_method, "pp (preference-based) or idss");
    pp_cmd->add_option("--k", pp_k, "subset size");
    pp_cmd->add_option("--t-max", pp_tmax, "IDSS iterations");
    pp_cmd->add_option("--r", pp_r, "ROI radius");
    pp_cmd->add_option("--z", pp_z, "reference point, comma-separated");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "indicator values of a solution set");
    std::string eval_solutions;
    std::string eval_front;
    std::string eval_indicator = "all";
    double eval_r = 0.1;
    std::string eval_z;
    eval_cmd->add_option("--solutions", eval_solutions, "solution set CSV/JSON")->required();
    eval_cmd->add_option("--front", eval_front, "front sample CSV")->required();
    eval_cmd->add_option("--indicator", eval_indicator, "igd|igd_plus|igd_c|igd_plus_c|all");
    eval_cmd->add_option("--r", eval_r, "ROI radius");
    eval_cmd->add_option("--z", eval_z, "reference point, comma-separated");

    // tables
    auto* tables_cmd = app.add_subcommand("tables", "comparison tables with verdicts");
    std::string tables_results;
    std::uint64_t tables_evals = 0;
    tables_cmd->add_option("--results", tables_results, "results.csv")->required();
    tables_cmd->add_option("--evals", tables_evals, "budget to compare at (default: largest)");

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "Friedman rankings of population sizes");
    std::string rank_results;
    std::string rank_subset = "UA-PP";
    rank_cmd->add_option("--results", rank_results, "results.csv")->required();
    rank_cmd->add_option("--subset", rank_subset, "subset kind (POP, UA-IDSS, UA-PP)");

    // plotdata
    auto* plot_cmd = app.add_subcommand("plotdata", "per-mu indicator series");
    std::string plot_results;
    std::string plot_algorithm;
    std::string plot_problem;
    int plot_m = 2;
    std::string plot_subset = "UA-PP";
    plot_cmd->add_option("--results", plot_results, "results.csv")->required();
    plot_cmd->add_option("--algorithm", plot_algorithm, "algorithm id")->required();
    plot_cmd->add_option("--problem", plot_problem, "problem name")->required();
    plot_cmd->add_option("--m", plot_m, "number of objectives");
    plot_cmd->add_option("--subset", plot_subset, "subset kind");

    // front-sample
    auto* front_cmd = app.add_subcommand("front-sample", "sample the analytic Pareto front");
    std::string front_problem = "DTLZ2";
    int front_m = 2;
    std::size_t front_count = 0;
    bool front_header = false;
    front_cmd->add_option("--problem", front_problem, "DTLZ1..DTLZ4");
    front_cmd->add_option("--m", front_m, "number of objectives");
    front_cmd->add_option("--count", front_count, "points (0 = per-m default)");
    front_cmd->add_flag("--header", front_header, "emit a header line");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            if (opt.config.empty())
                throw pbemo::config_error("run requires --config <plan>");
            return cmd_run(opt, records_dir, archive_dir);
        }
        if (pp_cmd->parsed()) {
            const std::vector<pbemo::Solution> archive = pbemo::read_solution_set(pp_in);
            if (archive.empty())
                throw pbemo::input_error("empty archive: " + pp_in);
            pbemo::Rng rng(pbemo::derive_seed(opt.seed, pbemo::rng_stream::selection));
            std::vector<pbemo::Solution> subset;
            if (pp_method == "idss") {
                subset = pbemo::idss(archive, pp_k, pp_tmax, rng);
            } else if (pp_method == "pp") {
                pbemo::PostprocessParams params;
                params.k = pp_k;
                params.t_max = pp_tmax;
                params.roi.r = pp_r;
                params.roi.z = pp_z.empty()
                                   ? pbemo::default_reference_point(
                                         static_cast<int>(archive.front().f.size()))
                                   : parse_vec(pp_z);
                subset = pbemo::pref_postprocess(archive, params, rng);
            } else {
                throw pbemo::config_error("unknown method: " + pp_method);
            }
            const std::string out_path = opt.out.empty() ? "subset.csv" : opt.out;
            if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json") {
                pbemo::write_archive_json(out_path, subset);
            } else {
                std::vector<pbemo::Vec> rows;
                for (const pbemo::Solution& s : subset)
                    rows.push_back(s.f);
                pbemo::write_objectives_csv(out_path, rows, false, archive.front().f.size());
            }
            std::cout << "selected " << subset.size() << " of " << archive.size() << " -> "
                      << out_path << "\n";
            return 0;
        }
        if (eval_cmd->parsed()) {
            const std::vector<pbemo::Solution> sols = pbemo::read_solution_set(eval_solutions);
            if (sols.empty())
                throw pbemo::input_error("empty solution set");
            std::vector<pbemo::Vec> X;
            for (const pbemo::Solution& s : sols)
                X.push_back(s.f);
            const std::vector<pbemo::Vec> S = pbemo::read_objectives_csv(eval_front);
            pbemo::RoiSpec roi;
            roi.r = eval_r;
            roi.z = eval_z.empty()
                        ? pbemo::default_reference_point(static_cast<int>(X.front().size()))
                        : parse_vec(eval_z);
            auto print = [](const char* name, double v) {
                std::cout << name << " " << pbemo::format_double(v) << "\n";
            };
            if (eval_indicator == "igd" || eval_indicator == "all")
                print("igd", pbemo::igd(X, S));
            if (eval_indicator == "igd_plus" || eval_indicator == "all")
                print("igd_plus", pbemo::igd_plus(X, S));
            if (eval_indicator == "igd_c" || eval_indicator == "all")
                print("igd_c", pbemo::igd_c(X, S, roi));
            if (eval_indicator == "igd_plus_c" || eval_indicator == "all")
                print("igd_plus_c", pbemo::igd_plus_c(X, S, roi));
            return 0;
        }
        if (tables_cmd->parsed()) {
            const auto rows = pbemo::read_results_csv(tables_results);
            const pbemo::TableReport report = pbemo::make_tables(rows, tables_evals);
            for (const std::string& w : report.warnings)
                std::cerr << "warning: " << w << "\n";
            const std::string prefix = opt.out.empty() ? "tables" : opt.out;
            write_text(prefix + ".csv", report.csv_text);
            write_text(prefix + ".txt", report.txt_text);
            std::cout << report.txt_text;
            return 0;
        }
        if (rank_cmd->parsed()) {
            const auto rows = pbemo::read_results_csv(rank_results);
            const pbemo::RankReport report = pbemo::rank_popsizes(rows, rank_subset);
            const std::string prefix = opt.out.empty() ? "rank" : opt.out;
            write_text(prefix + ".csv", report.csv_text);
            write_text(prefix + ".txt", report.txt_text);
            std::cout << report.txt_text;
            return 0;
        }
        if (plot_cmd->parsed()) {
            const auto rows = pbemo::read_results_csv(plot_results);
            const pbemo::PlotData data =
                pbemo::emit_plotdata(rows, plot_algorithm, plot_problem, plot_m, plot_subset);
            const std::string out_path = opt.out.empty() ? "plotdata.csv" : opt.out;
            write_text(out_path, data.csv_text);
            for (const pbemo::PlotSeries& s : data.series) {
                if (s.mean_increases > 0) {
                    std::cerr << "note: mu=" << s.mu << " mean is non-monotone ("
                              << s.mean_increases << " increasing steps)\n";
                }
            }
            std::cout << "wrote " << out_path << "\n";
            return 0;
        }
        if (front_cmd->parsed()) {
            const pbemo::ProblemSpec p = pbemo::make_problem(front_problem, front_m);
            const std::size_t count =
                front_count > 0 ? front_count : pbemo::default_front_sample_count(front_m);
            const pbemo::IndicatorRefSet set = pbemo::sample_front(p, count, opt.seed);
            const std::string out_path = opt.out.empty() ? "front.csv" : opt.out;
            pbemo::write_objectives_csv(out_path, set.points, front_header,
                                        static_cast<std::size_t>(front_m));
            std::cout << "wrote " << count << " points -> " << out_path << "\n";
            return 0;
        }
    } catch (const pbemo::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
