#ifndef PBEMO_HARNESS_HPP
#define PBEMO_HARNESS_HPP

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pbemo/algorithms.hpp"
#include "pbemo/config.hpp"
#include "pbemo/indicators.hpp"
#include "pbemo/io.hpp"
#include "pbemo/postprocess.hpp"
#include "pbemo/stats.hpp"

// Experiment orchestration: executes a plan grid cell by cell (optionally in
// parallel), persists one CSV block per cell plus a completion manifest, and
// merges everything into results.csv in canonical grid order so reruns and
// different job counts produce byte-identical output. Downstream consumers
// turn the results file into comparison tables, population-size rankings and
// plot data.

namespace pbemo {

inline const char* const kSubsetKinds[3] = {"POP", "UA-IDSS", "UA-PP"};

struct ResultRow {
    std::string algorithm;
    std::string problem;
    int m = 0;
    std::size_t mu = 0;
    std::uint64_t seed = 0;
    std::uint64_t evals = 0;
    std::string subset;
    std::string indicator;
    double value = 0.0;
};

inline std::string results_header()
{
    return "algorithm,problem,m,mu,seed,evals,subset,indicator,value";
}

inline std::string to_csv(const ResultRow& r)
{
    std::ostringstream os;
    os << r.algorithm << ',' << r.problem << ',' << r.m << ',' << r.mu << ',' << r.seed << ','
       << r.evals << ',' << r.subset << ',' << r.indicator << ',' << format_double(r.value);
    return os.str();
}

inline std::vector<ResultRow> read_results_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open results file " + path);
    std::vector<ResultRow> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        if (first) {
            first = false;
            if (line.rfind("algorithm,", 0) == 0)
                continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 9)
            throw input_error(path + ": malformed results row: " + line);
        ResultRow r;
        r.algorithm = f[0];
        r.problem = f[1];
        r.m = static_cast<int>(parse_double(f[2]));
        r.mu = static_cast<std::size_t>(parse_double(f[3]));
        r.seed = static_cast<std::uint64_t>(parse_double(f[4]));
        r.evals = static_cast<std::uint64_t>(parse_double(f[5]));
        r.subset = f[6];
        r.indicator = f[7];
        r.value = parse_double(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct Cell {
    AlgorithmId algorithm;
    ProblemId problem;
    int m = 2;
    std::size_t mu = 100;
    std::uint64_t seed = 1;
};

inline std::string cell_key(const Cell& c)
{
    std::ostringstream os;
    os << algorithm_name(c.algorithm) << '_' << problem_name(c.problem) << "_m" << c.m << "_mu"
       << c.mu << "_s" << c.seed;
    return os.str();
}

/// Canonical grid order: algorithms, problems, m, mu, seeds, nested in plan
/// order.
inline std::vector<Cell> plan_grid(const ExperimentPlan& plan)
{
    std::vector<Cell> cells;
    for (AlgorithmId a : plan.algorithms)
        for (ProblemId p : plan.problems)
            for (int m : plan.objective_counts)
                for (std::size_t mu : plan.population_sizes)
                    for (std::uint64_t seed : plan.seeds)
                        cells.push_back(Cell{a, p, m, mu, seed});
    return cells;
}

inline RunConfig cell_config(const ExperimentPlan& plan, const Cell& cell)
{
    RunConfig cfg;
    cfg.algorithm = cell.algorithm;
    cfg.problem = make_problem(cell.problem, cell.m);
    cfg.mu = cell.mu;
    cfg.max_evals = plan.max_evals;
    cfg.seed = cell.seed;
    cfg.roi = plan.roi(cell.m);
    cfg.params = plan.algo_params;
    cfg.schedule = plan.schedule;
    return cfg;
}

namespace detail {

constexpr std::uint64_t kIdssStreamTag = 101;
constexpr std::uint64_t kPrefPpStreamTag = 102;

inline double score_set(const std::vector<Vec>& X, const RoiRefSubset& sub, IndicatorKind kind)
{
    return kind == IndicatorKind::IgdC ? igd(X, sub.points) : igd_plus(X, sub.points);
}

/// Rows for one (cell, checkpoint): POP, UA-IDSS and UA-PP scored with the
/// plan's indicator. Post-processing randomness is seeded from
/// (cell seed, checkpoint, subset kind) so rows are independent of execution
/// order.
inline void emit_rows(const ExperimentPlan& plan, const Cell& cell, std::uint64_t evals,
                      const std::vector<Solution>& population, const std::vector<Solution>& archive,
                      const RoiRefSubset& sub, std::vector<ResultRow>& out)
{
    const RoiSpec roi = plan.roi(cell.m);
    PostprocessParams pp;
    pp.k = plan.subset_size;
    pp.t_max = plan.idss_iterations;
    pp.roi = roi;

    Rng idss_rng(derive_seed(derive_seed(cell.seed, evals), kIdssStreamTag));
    Rng pp_rng(derive_seed(derive_seed(cell.seed, evals), kPrefPpStreamTag));

    const std::vector<Solution> ua_idss = idss(archive, pp.k, pp.t_max, idss_rng);
    const std::vector<Solution> ua_pp = pref_postprocess(archive, pp, pp_rng);

    const std::vector<Solution>* sets[3] = {&population, &ua_idss, &ua_pp};
    for (int s = 0; s < 3; ++s) {
        std::vector<Vec> fs;
        fs.reserve(sets[s]->size());
        for (const Solution& sol : *sets[s])
            fs.push_back(sol.f);
        ResultRow r;
        r.algorithm = algorithm_name(cell.algorithm);
        r.problem = problem_name(cell.problem);
        r.m = cell.m;
        r.mu = cell.mu;
        r.seed = cell.seed;
        r.evals = evals;
        r.subset = kSubsetKinds[s];
        r.indicator = indicator_name(plan.indicator);
        r.value = score_set(fs, sub, plan.indicator);
        out.push_back(std::move(r));
    }
}

inline std::vector<ResultRow> run_cell(const ExperimentPlan& plan, const Cell& cell,
                                       const RoiRefSubset& sub)
{
    const RunConfig cfg = cell_config(plan, cell);
    const std::vector<std::uint64_t> row_cps = plan.resolved_row_checkpoints();
    std::set<std::uint64_t> wanted(row_cps.begin(), row_cps.end());

    std::vector<ResultRow> rows;
    std::set<std::uint64_t> emitted;
    SnapshotSink sink = [&](std::uint64_t evals, const std::vector<Solution>& pop,
                            const std::vector<Solution>& archive) {
        if (wanted.count(evals)) {
            emit_rows(plan, cell, evals, pop, archive, sub, rows);
            emitted.insert(evals);
        }
    };
    RunRecord record = run(cfg, &sink, false);
    if (wanted.count(plan.max_evals) && !emitted.count(plan.max_evals)) {
        emit_rows(plan, cell, plan.max_evals, record.final_population, record.final_archive, sub,
                  rows);
    }
    return rows;
}

inline std::string plan_fingerprint(const ExperimentPlan& plan)
{
    nlohmann::json j;
    for (AlgorithmId a : plan.algorithms)
        j["algorithms"].push_back(algorithm_name(a));
    for (ProblemId p : plan.problems)
        j["problems"].push_back(problem_name(p));
    j["objectives"] = plan.objective_counts;
    j["population_sizes"] = plan.population_sizes;
    j["max_evals"] = plan.max_evals;
    j["seeds"] = plan.seeds;
    j["r"] = plan.roi_radius;
    for (const auto& [m, z] : plan.reference_points)
        j["z"][std::to_string(m)] = z;
    j["k"] = plan.subset_size;
    j["t_max"] = plan.idss_iterations;
    j["indicator"] = indicator_name(plan.indicator);
    j["front_count"] = plan.front_count;
    j["front_seed"] = plan.front_seed;
    j["checkpoints"] = plan.schedule.checkpoints;
    j["row_checkpoints"] = plan.resolved_row_checkpoints();
    j["epsilon_clear"] = plan.algo_params.epsilon_clear;
    j["delta"] = plan.algo_params.delta;
    j["rho"] = plan.algo_params.rho;
    j["kappa"] = plan.algo_params.kappa;
    const std::string dump = j.dump();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016zx", std::hash<std::string>{}(dump));
    return buf;
}

} // namespace detail

struct ExecuteStats {
    std::size_t cells_run = 0;
    std::size_t cells_skipped = 0;
    std::string results_path;
};

/// Executes every grid cell of the plan, skipping cells already recorded in
/// the output directory's manifest, and (re)writes the merged results.csv.
/// The merged file depends only on the plan, never on the job count or on
/// which cells were cached.
inline ExecuteStats execute(const ExperimentPlan& plan, std::size_t jobs = 1)
{
    namespace fs = std::filesystem;
    const fs::path out_dir(plan.output_dir);
    const fs::path cells_dir = out_dir / "cells";
    std::error_code ec;
    fs::create_directories(cells_dir, ec);
    if (ec)
        throw config_error("cannot create output directory " + cells_dir.string());

    const std::string fingerprint = detail::plan_fingerprint(plan);
    const fs::path manifest_path = out_dir / "manifest.json";
    nlohmann::json manifest;
    if (fs::exists(manifest_path)) {
        std::ifstream in(manifest_path);
        try {
            in >> manifest;
        } catch (const nlohmann::json::parse_error&) {
            throw config_error("corrupt manifest: " + manifest_path.string());
        }
        if (manifest.value("fingerprint", "") != fingerprint)
            throw config_error("output directory " + out_dir.string()
                               + " was produced by a different plan; use a fresh directory");
    } else {
        manifest["fingerprint"] = fingerprint;
        manifest["cells"] = nlohmann::json::object();
    }

    // front samples and their ROI restrictions, shared read-only by workers
    std::map<std::pair<int, int>, RoiRefSubset> subsets;
    for (ProblemId p : plan.problems) {
        for (int m : plan.objective_counts) {
            const std::pair<int, int> key{static_cast<int>(p), m};
            if (subsets.count(key))
                continue;
            const std::size_t count =
                plan.front_count > 0 ? plan.front_count : default_front_sample_count(m);
            const IndicatorRefSet S = sample_front(make_problem(p, m), count, plan.front_seed);
            subsets.emplace(key, roi_ref_subset(S.points, plan.roi(m)));
        }
    }

    const std::vector<Cell> cells = plan_grid(plan);
    for (const Cell& cell : cells)
        validate_config(cell_config(plan, cell)); // fail before any work starts

    ExecuteStats stats;
    std::mutex manifest_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> ran{0};
    std::atomic<std::size_t> skipped{0};
    std::atomic<bool> failed{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        while (true) {
            if (failed.load())
                return;
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size())
                return;
            const Cell& cell = cells[i];
            const std::string key = cell_key(cell);
            const fs::path cell_path = cells_dir / (key + ".csv");
            {
                std::lock_guard<std::mutex> lock(manifest_mutex);
                if (manifest["cells"].contains(key) && fs::exists(cell_path)) {
                    skipped.fetch_add(1);
                    continue;
                }
            }
            try {
                const RoiRefSubset& sub = subsets.at({static_cast<int>(cell.problem), cell.m});
                const std::vector<ResultRow> rows = detail::run_cell(plan, cell, sub);
                std::ofstream out(cell_path);
                if (!out)
                    throw input_error("cannot write " + cell_path.string());
                for (const ResultRow& r : rows)
                    out << to_csv(r) << "\n";
                out.close();
                {
                    std::lock_guard<std::mutex> lock(manifest_mutex);
                    manifest["cells"][key] = true;
                    std::ofstream mf(manifest_path);
                    mf << manifest.dump(1) << "\n";
                }
                ran.fetch_add(1);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    try {
                        std::rethrow_exception(std::current_exception());
                    } catch (const config_error& e) {
                        failure = std::make_exception_ptr(
                            config_error("cell " + key + ": " + e.what()));
                    } catch (const std::exception& e) {
                        failure = std::make_exception_ptr(
                            std::runtime_error("cell " + key + ": " + e.what()));
                    }
                }
                failed.store(true);
                return;
            }
        }
    };

    jobs = std::max<std::size_t>(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < jobs; ++t)
            threads.emplace_back(worker);
        for (std::thread& t : threads)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    const fs::path results_path = out_dir / "results.csv";
    std::ofstream out(results_path);
    if (!out)
        throw input_error("cannot write " + results_path.string());
    out << results_header() << "\n";
    for (const Cell& cell : cells) {
        const fs::path cell_path = cells_dir / (cell_key(cell) + ".csv");
        std::ifstream in(cell_path);
        if (!in)
            throw input_error("missing cell output " + cell_path.string());
        out << in.rdbuf();
    }

    stats.cells_run = ran.load();
    stats.cells_skipped = skipped.load();
    stats.results_path = results_path.string();
    return stats;
}

// ---------------------------------------------------------------------------
// Tables (mean indicator + Wilcoxon verdicts)
// ---------------------------------------------------------------------------

struct TableLine {
    std::string algorithm;
    std::string problem;
    int m = 0;
    std::size_t mu = 0;
    std::uint64_t evals = 0;
    std::size_t seeds = 0;
    double mean[3] = {0.0, 0.0, 0.0}; // POP, UA-IDSS, UA-PP
    bool has_verdicts = false;
    Verdict idss_vs_pop = Verdict::Similar;
    Verdict pp_vs_pop = Verdict::Similar;
    Verdict pp_vs_idss = Verdict::Similar;
    int best = 0;   // index into kSubsetKinds
    int second = 0;
};

struct TableReport {
    std::vector<TableLine> lines;
    std::vector<std::string> warnings;
    std::string csv_text;
    std::string txt_text;
};

namespace detail {

inline std::string fixed4(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct SubsetSamples {
    std::vector<std::pair<std::uint64_t, double>> seed_values[3];

    std::vector<double> sorted_values(int kind) const
    {
        std::vector<std::pair<std::uint64_t, double>> sv = seed_values[kind];
        std::sort(sv.begin(), sv.end());
        std::vector<double> out;
        out.reserve(sv.size());
        for (const auto& [seed, v] : sv)
            out.push_back(v);
        return out;
    }
};

inline int subset_index(const std::string& name)
{
    for (int i = 0; i < 3; ++i)
        if (name == kSubsetKinds[i])
            return i;
    throw input_error("unknown subset kind: " + name);
}

} // namespace detail

/// Per-(algorithm, problem, m, mu) comparison of POP / UA-IDSS / UA-PP at one
/// evaluation budget: means, pairwise Wilcoxon verdicts, best and second-best
/// flags. `evals` 0 selects the largest budget present.
inline TableReport make_tables(const std::vector<ResultRow>& rows, std::uint64_t evals = 0)
{
    if (rows.empty())
        throw input_error("make_tables: no result rows");
    if (evals == 0) {
        for (const ResultRow& r : rows)
            evals = std::max(evals, r.evals);
    }

    std::map<std::tuple<std::string, std::string, int, std::size_t>, detail::SubsetSamples> groups;
    for (const ResultRow& r : rows) {
        if (r.evals != evals)
            continue;
        groups[{r.algorithm, r.problem, r.m, r.mu}]
            .seed_values[detail::subset_index(r.subset)]
            .emplace_back(r.seed, r.value);
    }
    if (groups.empty())
        throw input_error("make_tables: no rows at evals=" + std::to_string(evals));

    TableReport report;
    std::ostringstream csv;
    csv << "algorithm,problem,m,mu,evals,seeds,pop_mean,ua_idss_mean,ua_pp_mean,"
           "ua_idss_vs_pop,ua_pp_vs_pop,ua_pp_vs_ua_idss,best,second\n";
    std::ostringstream txt;

    for (const auto& [key, samples] : groups) {
        TableLine line;
        line.algorithm = std::get<0>(key);
        line.problem = std::get<1>(key);
        line.m = std::get<2>(key);
        line.mu = std::get<3>(key);
        line.evals = evals;

        std::vector<double> values[3];
        for (int k = 0; k < 3; ++k) {
            values[k] = samples.sorted_values(k);
            if (values[k].empty())
                throw input_error("make_tables: missing " + std::string(kSubsetKinds[k])
                                  + " rows for " + line.algorithm + "/" + line.problem);
            double sum = 0.0;
            for (double v : values[k])
                sum += v;
            line.mean[k] = sum / static_cast<double>(values[k].size());
        }
        line.seeds = values[0].size();

        if (line.seeds >= 2 && values[1].size() >= 2 && values[2].size() >= 2) {
            line.has_verdicts = true;
            line.idss_vs_pop = wilcoxon_rank_sum({values[1], "UA-IDSS"}, {values[0], "POP"}).verdict;
            line.pp_vs_pop = wilcoxon_rank_sum({values[2], "UA-PP"}, {values[0], "POP"}).verdict;
            line.pp_vs_idss = wilcoxon_rank_sum({values[2], "UA-PP"}, {values[1], "UA-IDSS"}).verdict;
        } else {
            report.warnings.push_back("fewer than 2 seeds for " + line.algorithm + "/"
                                      + line.problem + " m=" + std::to_string(line.m)
                                      + "; verdicts omitted");
        }

        line.best = 0;
        for (int k = 1; k < 3; ++k)
            if (line.mean[k] < line.mean[line.best])
                line.best = k;
        line.second = line.best == 0 ? 1 : 0;
        for (int k = 0; k < 3; ++k) {
            if (k != line.best && line.mean[k] < line.mean[line.second])
                line.second = k;
        }

        csv << line.algorithm << ',' << line.problem << ',' << line.m << ',' << line.mu << ','
            << line.evals << ',' << line.seeds << ',' << detail::fixed4(line.mean[0]) << ','
            << detail::fixed4(line.mean[1]) << ',' << detail::fixed4(line.mean[2]) << ',';
        if (line.has_verdicts) {
            csv << verdict_symbol(line.idss_vs_pop) << ',' << verdict_symbol(line.pp_vs_pop) << ','
                << verdict_symbol(line.pp_vs_idss);
        } else {
            csv << ",,";
        }
        csv << ',' << kSubsetKinds[line.best] << ',' << kSubsetKinds[line.second] << "\n";
        report.lines.push_back(line);
    }

    txt << "Indicator means at " << evals << " evaluations (" << rows.front().indicator << ")\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-10s %-7s %2s %5s  %-14s %-14s %-14s\n", "algorithm",
                  "problem", "m", "mu", "POP", "UA-IDSS", "UA-PP");
    txt << buf;
    for (const TableLine& line : report.lines) {
        std::string idss = detail::fixed4(line.mean[1]);
        std::string pp = detail::fixed4(line.mean[2]);
        if (line.has_verdicts) {
            idss += " (" + std::string(verdict_symbol(line.idss_vs_pop)) + ")";
            pp += " (" + std::string(verdict_symbol(line.pp_vs_pop)) + ","
                  + verdict_symbol(line.pp_vs_idss) + ")";
        }
        std::snprintf(buf, sizeof(buf), "%-10s %-7s %2d %5zu  %-14s %-14s %-14s\n",
                      line.algorithm.c_str(), line.problem.c_str(), line.m, line.mu,
                      detail::fixed4(line.mean[0]).c_str(), idss.c_str(), pp.c_str());
        txt << buf;
    }
    report.csv_text = csv.str();
    report.txt_text = txt.str();
    return report;
}

// ---------------------------------------------------------------------------
// Population-size rankings (Friedman)
// ---------------------------------------------------------------------------

struct RankLine {
    std::string algorithm;
    int m = 0;
    std::uint64_t evals = 0;
    std::vector<std::size_t> mus;
    std::vector<double> avg_ranks;
    std::size_t best_mu = 0;
};

struct RankReport {
    std::vector<RankLine> lines;
    std::string csv_text;
    std::string txt_text;
};

/// Friedman average ranks of the population sizes per (algorithm, m, evals),
/// blocked over (problem, seed) pairs, using the rows of one subset kind.
inline RankReport rank_popsizes(const std::vector<ResultRow>& rows,
                                const std::string& subset = "UA-PP")
{
    std::set<std::size_t> mu_set;
    std::set<std::tuple<std::string, int, std::uint64_t>> group_keys;
    std::map<std::tuple<std::string, int, std::uint64_t, std::string, std::uint64_t, std::size_t>,
             double>
        value_at;
    std::set<std::pair<std::string, std::uint64_t>> blocks;
    for (const ResultRow& r : rows) {
        if (r.subset != subset)
            continue;
        mu_set.insert(r.mu);
        group_keys.insert({r.algorithm, r.m, r.evals});
        blocks.insert({r.problem, r.seed});
        value_at[{r.algorithm, r.m, r.evals, r.problem, r.seed, r.mu}] = r.value;
    }
    if (mu_set.size() < 2)
        throw input_error("rank_popsizes: need rows for at least two population sizes");

    const std::vector<std::size_t> mus(mu_set.begin(), mu_set.end());
    RankReport report;
    std::ostringstream csv;
    csv << "algorithm,m,evals,best_mu";
    for (std::size_t mu : mus)
        csv << ",rank_mu" << mu;
    csv << "\n";

    for (const auto& [algorithm, m, evals] : group_keys) {
        std::vector<std::vector<double>> matrix;
        for (const auto& [problem, seed] : blocks) {
            std::vector<double> row;
            row.reserve(mus.size());
            for (std::size_t mu : mus) {
                const auto it = value_at.find({algorithm, m, evals, problem, seed, mu});
                if (it == value_at.end())
                    throw input_error("rank_popsizes: missing cell (" + algorithm + ", " + problem
                                      + ", m=" + std::to_string(m) + ", mu=" + std::to_string(mu)
                                      + ", seed=" + std::to_string(seed)
                                      + ", evals=" + std::to_string(evals) + ")");
                row.push_back(it->second);
            }
            matrix.push_back(std::move(row));
        }
        RankLine line;
        line.algorithm = algorithm;
        line.m = m;
        line.evals = evals;
        line.mus = mus;
        line.avg_ranks = friedman_ranks(matrix);
        line.best_mu = mus[best_treatment(line.avg_ranks)];
        csv << algorithm << ',' << m << ',' << evals << ',' << line.best_mu;
        for (double r : line.avg_ranks)
            csv << ',' << detail::fixed4(r);
        csv << "\n";
        report.lines.push_back(std::move(line));
    }

    std::ostringstream txt;
    txt << "Best population size by Friedman average rank (" << subset << " rows)\n";
    for (const RankLine& line : report.lines) {
        txt << line.algorithm << " m=" << line.m << " @" << line.evals << " evals: best mu="
            << line.best_mu << " (ranks:";
        for (std::size_t i = 0; i < line.mus.size(); ++i)
            txt << " mu" << line.mus[i] << "=" << detail::fixed4(line.avg_ranks[i]);
        txt << ")\n";
    }
    report.csv_text = csv.str();
    report.txt_text = txt.str();
    return report;
}

// ---------------------------------------------------------------------------
// Plot data
// ---------------------------------------------------------------------------

struct PlotSeries {
    std::size_t mu = 0;
    std::vector<std::uint64_t> evals;
    std::vector<double> mean;
    std::vector<std::vector<double>> per_seed; // aligned with evals; seeds ascending
    std::size_t mean_increases = 0;            // non-monotone steps in the mean
};

struct PlotData {
    std::vector<std::uint64_t> seeds;
    std::vector<PlotSeries> series;
    std::string csv_text;
};

/// Per-mu series of the selected indicator over the evaluation checkpoints:
/// mean plus one column per seed. Counts the non-monotone (increasing) steps
/// of each mean series.
inline PlotData emit_plotdata(const std::vector<ResultRow>& rows, const std::string& algorithm,
                              const std::string& problem, int m, const std::string& subset = "UA-PP")
{
    std::map<std::size_t, std::map<std::uint64_t, std::map<std::uint64_t, double>>> by_mu;
    std::set<std::uint64_t> seed_set;
    for (const ResultRow& r : rows) {
        if (r.algorithm != algorithm || r.problem != problem || r.m != m || r.subset != subset)
            continue;
        by_mu[r.mu][r.evals][r.seed] = r.value;
        seed_set.insert(r.seed);
    }
    if (by_mu.empty())
        throw input_error("emit_plotdata: no rows match " + algorithm + "/" + problem + "/m="
                          + std::to_string(m) + "/" + subset);

    PlotData data;
    data.seeds.assign(seed_set.begin(), seed_set.end());
    std::ostringstream csv;
    csv << "mu,evals,mean";
    for (std::uint64_t s : data.seeds)
        csv << ",seed" << s;
    csv << "\n";

    for (const auto& [mu, by_evals] : by_mu) {
        PlotSeries series;
        series.mu = mu;
        for (const auto& [evals, by_seed] : by_evals) {
            std::vector<double> vals;
            vals.reserve(data.seeds.size());
            for (std::uint64_t s : data.seeds) {
                const auto it = by_seed.find(s);
                if (it == by_seed.end())
                    throw input_error("emit_plotdata: missing seed " + std::to_string(s)
                                      + " at evals=" + std::to_string(evals));
                vals.push_back(it->second);
            }
            double sum = 0.0;
            for (double v : vals)
                sum += v;
            series.evals.push_back(evals);
            series.mean.push_back(sum / static_cast<double>(vals.size()));
            series.per_seed.push_back(std::move(vals));
        }
        for (std::size_t i = 1; i < series.mean.size(); ++i) {
            if (series.mean[i] > series.mean[i - 1])
                ++series.mean_increases;
        }
        for (std::size_t i = 0; i < series.evals.size(); ++i) {
            csv << series.mu << ',' << series.evals[i] << ',' << format_double(series.mean[i]);
            for (double v : series.per_seed[i])
                csv << ',' << format_double(v);
            csv << "\n";
        }
        data.series.push_back(std::move(series));
    }
    data.csv_text = csv.str();
    return data;
}

} // namespace pbemo

#endif
