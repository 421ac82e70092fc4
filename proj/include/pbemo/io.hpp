#ifndef PBEMO_IO_HPP
#define PBEMO_IO_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "pbemo/algorithms.hpp"
#include "pbemo/core.hpp"

// File interchange: objective-vector CSV ('.' decimal separator, optional
// header), full-solution JSON, and run-record JSON. Numeric output uses the
// shortest round-trip decimal representation so that re-reading a file
// reproduces the exact doubles.

namespace pbemo {

inline std::string format_double(double v)
{
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t'))
        ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r'))
        --end;
    double value = 0.0;
    const std::from_chars_result res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw input_error("not a number: '" + text + "'");
    return value;
}

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ','))
        fields.push_back(field);
    return fields;
}

/// Reads a CSV of objective vectors; a non-numeric first line is treated as a
/// header and skipped.
inline std::vector<Vec> read_objectives_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    std::vector<Vec> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const std::vector<std::string> fields = split_csv_line(line);
        Vec row;
        row.reserve(fields.size());
        try {
            for (const std::string& f : fields)
                row.push_back(parse_double(f));
        } catch (const input_error&) {
            if (first) {
                first = false;
                continue; // header line
            }
            throw;
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw input_error(path + ": ragged CSV row");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_objectives_csv(const std::string& path, const std::vector<Vec>& rows,
                                 bool header, std::size_t m)
{
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write " + path);
    if (header) {
        for (std::size_t i = 0; i < m; ++i)
            out << (i ? "," : "") << "f" << i + 1;
        out << "\n";
    }
    for (const Vec& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const Solution& s)
{
    return nlohmann::json{{"x", s.x}, {"f", s.f}, {"birth_eval", s.birth_eval}};
}

inline Solution solution_from_json(const nlohmann::json& j)
{
    Solution s;
    s.x = j.value("x", Vec{});
    s.f = j.at("f").get<Vec>();
    s.birth_eval = j.value("birth_eval", std::uint64_t{0});
    return s;
}

inline nlohmann::json solutions_to_json(const std::vector<Solution>& set)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const Solution& s : set)
        arr.push_back(to_json(s));
    return arr;
}

inline std::vector<Solution> solutions_from_json(const nlohmann::json& arr)
{
    std::vector<Solution> out;
    out.reserve(arr.size());
    for (const nlohmann::json& j : arr)
        out.push_back(solution_from_json(j));
    return out;
}

/// Archive file: {"m": ..., "solutions": [{x, f, birth_eval}, ...]}.
inline void write_archive_json(const std::string& path, const std::vector<Solution>& members)
{
    nlohmann::json j;
    j["m"] = members.empty() ? 0 : members.front().f.size();
    j["solutions"] = solutions_to_json(members);
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

inline std::vector<Solution> read_archive_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return solutions_from_json(j.at("solutions"));
}

/// Loads a solution set from .json (full solutions) or .csv (objectives only;
/// decision vectors stay empty).
inline std::vector<Solution> read_solution_set(const std::string& path)
{
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return read_archive_json(path);
    std::vector<Solution> out;
    for (Vec& row : read_objectives_csv(path)) {
        Solution s;
        s.f = std::move(row);
        out.push_back(std::move(s));
    }
    return out;
}

inline nlohmann::json to_json(const RunConfig& cfg)
{
    nlohmann::json j;
    j["algorithm"] = algorithm_name(cfg.algorithm);
    j["problem"] = problem_name(cfg.problem.id);
    j["m"] = cfg.problem.m;
    j["n"] = cfg.problem.n;
    j["mu"] = cfg.mu;
    j["max_evals"] = cfg.max_evals;
    j["seed"] = cfg.seed;
    j["roi"] = {{"z", cfg.roi.z}, {"r", cfg.roi.r}};
    j["params"] = {{"epsilon_clear", cfg.params.epsilon_clear},
                   {"delta", cfg.params.delta},
                   {"rho", cfg.params.rho},
                   {"kappa", cfg.params.kappa}};
    if (!cfg.params.weights.empty())
        j["params"]["weights"] = cfg.params.weights;
    j["schedule"] = cfg.schedule.checkpoints;
    return j;
}

inline nlohmann::json to_json(const RunRecord& record)
{
    nlohmann::json j;
    j["config"] = to_json(record.config);
    nlohmann::json snaps = nlohmann::json::array();
    for (const Snapshot& s : record.snapshots) {
        snaps.push_back(nlohmann::json{{"evals", s.evals},
                                       {"population", solutions_to_json(s.population)},
                                       {"archive", solutions_to_json(s.archive)}});
    }
    j["snapshots"] = std::move(snaps);
    j["final_population"] = solutions_to_json(record.final_population);
    j["final_archive"] = solutions_to_json(record.final_archive);
    return j;
}

} // namespace pbemo

#endif
