#ifndef PBEMO_CONFIG_HPP
#define PBEMO_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbemo/algorithms.hpp"
#include "pbemo/archive.hpp"
#include "pbemo/core.hpp"
#include "pbemo/postprocess.hpp"
#include "pbemo/problems.hpp"

// Experiment plan ingestion. Plans are declarative documents accepted either
// as JSON or as a TOML-style subset (sections, key = value, JSON-compatible
// scalars and arrays, '#' comments). Every experimental parameter is a named
// key with an explicit default.

namespace pbemo {

enum class IndicatorKind { IgdC, IgdPlusC };

inline const char* indicator_name(IndicatorKind k)
{
    return k == IndicatorKind::IgdC ? "igd_c" : "igd_plus_c";
}

inline IndicatorKind indicator_from_name(const std::string& name)
{
    if (name == "igd_c")
        return IndicatorKind::IgdC;
    if (name == "igd_plus_c")
        return IndicatorKind::IgdPlusC;
    throw config_error("unknown indicator: " + name + " (expected igd_c or igd_plus_c)");
}

struct ExperimentPlan {
    std::vector<AlgorithmId> algorithms{AlgorithmId::RNSGA2};
    std::vector<ProblemId> problems{ProblemId::DTLZ2};
    std::vector<int> objective_counts{2};
    std::vector<std::size_t> population_sizes{100};
    std::uint64_t max_evals = 50000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

    double roi_radius = 0.1;
    std::map<int, Vec> reference_points; // per-m overrides; defaults otherwise

    std::size_t subset_size = 100; // k
    std::size_t idss_iterations = 10000; // t_max

    IndicatorKind indicator = IndicatorKind::IgdPlusC;
    std::size_t front_count = 0; // 0: per-m default
    std::uint64_t front_seed = 20220401;

    UpdateSchedule schedule = default_schedule();
    std::vector<std::uint64_t> row_checkpoints; // empty: all schedule points <= max_evals

    AlgoParams algo_params;
    std::string output_dir = "out";

    Vec reference_point(int m) const
    {
        const auto it = reference_points.find(m);
        return it != reference_points.end() ? it->second : default_reference_point(m);
    }

    RoiSpec roi(int m) const { return RoiSpec{reference_point(m), roi_radius}; }

    std::vector<std::uint64_t> resolved_row_checkpoints() const
    {
        if (!row_checkpoints.empty())
            return row_checkpoints;
        std::vector<std::uint64_t> cps;
        for (std::uint64_t c : schedule.checkpoints) {
            if (c <= max_evals)
                cps.push_back(c);
        }
        if (cps.empty())
            cps.push_back(max_evals);
        return cps;
    }
};

namespace detail {

template <typename T>
std::vector<T> int_list(const nlohmann::json& j, const std::string& key)
{
    std::vector<T> out;
    for (const nlohmann::json& v : j.at(key)) {
        if (!v.is_number())
            throw config_error(key + ": expected a list of numbers");
        out.push_back(v.get<T>());
    }
    return out;
}

} // namespace detail

inline ExperimentPlan plan_from_json(const nlohmann::json& j)
{
    ExperimentPlan plan;
    if (!j.is_object())
        throw config_error("plan must be an object");

    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::set<std::string> known{
            "algorithms", "problems", "objectives", "population_sizes", "max_evals",
            "seeds", "seed_count", "seed_base", "roi", "postprocess",
            "indicator", "front_sample", "checkpoints", "row_checkpoints",
            "algo_params", "output_dir"};
        if (!known.count(it.key()))
            throw config_error("unknown plan key: " + it.key());
    }

    if (j.contains("algorithms")) {
        plan.algorithms.clear();
        for (const nlohmann::json& a : j.at("algorithms"))
            plan.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
    }
    if (j.contains("problems")) {
        plan.problems.clear();
        for (const nlohmann::json& p : j.at("problems"))
            plan.problems.push_back(problem_from_name(p.get<std::string>()));
    }
    if (j.contains("objectives"))
        plan.objective_counts = detail::int_list<int>(j, "objectives");
    if (j.contains("population_sizes"))
        plan.population_sizes = detail::int_list<std::size_t>(j, "population_sizes");
    if (j.contains("max_evals"))
        plan.max_evals = j.at("max_evals").get<std::uint64_t>();

    if (j.contains("seeds")) {
        if (j.contains("seed_count"))
            throw config_error("give either seeds or seed_count, not both");
        plan.seeds = detail::int_list<std::uint64_t>(j, "seeds");
    } else if (j.contains("seed_count")) {
        const std::uint64_t count = j.at("seed_count").get<std::uint64_t>();
        const std::uint64_t base = j.value("seed_base", std::uint64_t{1});
        plan.seeds.clear();
        for (std::uint64_t s = 0; s < count; ++s)
            plan.seeds.push_back(base + s);
    }

    if (j.contains("roi")) {
        const nlohmann::json& roi = j.at("roi");
        plan.roi_radius = roi.value("r", plan.roi_radius);
        if (roi.contains("z")) {
            const nlohmann::json& z = roi.at("z");
            if (z.is_array()) {
                Vec v = z.get<Vec>();
                plan.reference_points[static_cast<int>(v.size())] = std::move(v);
            } else if (z.is_object()) {
                for (auto it = z.begin(); it != z.end(); ++it)
                    plan.reference_points[std::stoi(it.key())] = it.value().get<Vec>();
            } else {
                throw config_error("roi.z must be an array or a per-m object");
            }
        }
    }

    if (j.contains("postprocess")) {
        const nlohmann::json& pp = j.at("postprocess");
        plan.subset_size = pp.value("k", plan.subset_size);
        plan.idss_iterations = pp.value("t_max", plan.idss_iterations);
    }
    if (j.contains("indicator"))
        plan.indicator = indicator_from_name(j.at("indicator").get<std::string>());
    if (j.contains("front_sample")) {
        const nlohmann::json& fs = j.at("front_sample");
        plan.front_count = fs.value("count", plan.front_count);
        plan.front_seed = fs.value("seed", plan.front_seed);
    }
    if (j.contains("checkpoints"))
        plan.schedule.checkpoints = detail::int_list<std::uint64_t>(j, "checkpoints");
    if (j.contains("row_checkpoints"))
        plan.row_checkpoints = detail::int_list<std::uint64_t>(j, "row_checkpoints");

    if (j.contains("algo_params")) {
        const nlohmann::json& ap = j.at("algo_params");
        plan.algo_params.epsilon_clear = ap.value("epsilon_clear", plan.algo_params.epsilon_clear);
        plan.algo_params.delta = ap.value("delta", plan.algo_params.delta);
        plan.algo_params.rho = ap.value("rho", plan.algo_params.rho);
        plan.algo_params.kappa = ap.value("kappa", plan.algo_params.kappa);
        if (ap.contains("weights"))
            plan.algo_params.weights = ap.at("weights").get<std::vector<Vec>>();
    }
    if (j.contains("output_dir"))
        plan.output_dir = j.at("output_dir").get<std::string>();

    // validation
    if (plan.algorithms.empty() || plan.problems.empty() || plan.objective_counts.empty()
        || plan.population_sizes.empty() || plan.seeds.empty())
        throw config_error("plan grid must name at least one algorithm, problem, m, mu and seed");
    {
        std::set<std::uint64_t> unique(plan.seeds.begin(), plan.seeds.end());
        if (unique.size() != plan.seeds.size())
            throw config_error("seeds must be distinct");
    }
    if (plan.subset_size < 1)
        throw config_error("postprocess.k must be >= 1");
    if (plan.idss_iterations < 1)
        throw config_error("postprocess.t_max must be >= 1");
    if (!(plan.roi_radius > 0.0))
        throw config_error("roi.r must be positive");
    for (int m : plan.objective_counts)
        plan.reference_point(m); // throws when no default exists and none given
    {
        std::vector<std::uint64_t> cps = plan.resolved_row_checkpoints();
        for (std::uint64_t c : cps) {
            const bool scheduled = std::find(plan.schedule.checkpoints.begin(),
                                             plan.schedule.checkpoints.end(), c)
                                   != plan.schedule.checkpoints.end();
            if (!scheduled && c != plan.max_evals)
                throw config_error("row checkpoint " + std::to_string(c)
                                   + " is neither a schedule checkpoint nor max_evals");
            if (c > plan.max_evals)
                throw config_error("row checkpoint exceeds max_evals");
        }
    }
    return plan;
}

/// Parses the TOML-style subset: [section] headers, key = value lines where
/// the value is JSON-compatible (number, "string", true/false, flat array),
/// and '#' comments.
inline nlohmann::json toml_subset_to_json(const std::string& text)
{
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* current = &root;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        // strip comments outside of strings
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"')
                quoted = !quoted;
            else if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(line_no) + ": bad section header");
            const std::string path = trim(line.substr(1, line.size() - 2));
            current = &root;
            std::size_t start = 0;
            while (start <= path.size()) {
                const std::size_t dot = path.find('.', start);
                const std::string part =
                    trim(path.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
                if (part.empty())
                    throw config_error("config line " + std::to_string(line_no) + ": empty section name");
                current = &(*current)[part];
                if (dot == std::string::npos)
                    break;
                start = dot + 1;
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        try {
            (*current)[key] = nlohmann::json::parse(value);
        } catch (const nlohmann::json::parse_error&) {
            throw config_error("config line " + std::to_string(line_no) + ": unsupported value '"
                               + value + "'");
        }
    }
    return root;
}

/// Loads a plan from a .json or TOML-style file; the format is detected from
/// the first non-whitespace character.
inline ExperimentPlan load_plan(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open plan file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        throw config_error("empty plan file " + path);
    nlohmann::json j;
    if (text[first] == '{') {
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw config_error(path + ": " + e.what());
        }
    } else {
        j = toml_subset_to_json(text);
    }
    return plan_from_json(j);
}

} // namespace pbemo

#endif
