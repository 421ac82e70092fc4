#ifndef PBEMO_ALGORITHMS_HPP
#define PBEMO_ALGORITHMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbemo/archive.hpp"
#include "pbemo/core.hpp"
#include "pbemo/nds.hpp"
#include "pbemo/problems.hpp"
#include "pbemo/rng.hpp"
#include "pbemo/variation.hpp"

// Reference-point-guided evolutionary algorithms and the run loop that feeds
// the external archive. Five algorithms are provided:
//
//   rnsga2   - NSGA-II with distance-to-z ranking and epsilon-clearing
//   rdnsga2  - NSGA-II with the r-dominance relation
//   gnsga2   - NSGA-II with the g-dominance relation
//   pbea     - IBEA with the preference-based epsilon-indicator
//   moead-rp - decomposition search over reference-point-biased weights
//
// Runs are bit-reproducible for a fixed (config, seed): one seeded generator
// per run, split into init / variation / selection streams (see rng.hpp).

namespace pbemo {

enum class AlgorithmId { RNSGA2, RDNSGA2, GNSGA2, PBEA, MOEAD_RP };

inline const char* algorithm_name(AlgorithmId id)
{
    switch (id) {
    case AlgorithmId::RNSGA2: return "rnsga2";
    case AlgorithmId::RDNSGA2: return "rdnsga2";
    case AlgorithmId::GNSGA2: return "gnsga2";
    case AlgorithmId::PBEA: return "pbea";
    case AlgorithmId::MOEAD_RP: return "moead-rp";
    }
    return "?";
}

inline AlgorithmId algorithm_from_name(const std::string& name)
{
    if (name == "rnsga2" || name == "R-NSGA-II") return AlgorithmId::RNSGA2;
    if (name == "rdnsga2" || name == "r-NSGA-II") return AlgorithmId::RDNSGA2;
    if (name == "gnsga2" || name == "g-NSGA-II") return AlgorithmId::GNSGA2;
    if (name == "pbea" || name == "PBEA") return AlgorithmId::PBEA;
    if (name == "moead-rp" || name == "MOEA/D-RP") return AlgorithmId::MOEAD_RP;
    throw config_error("unknown algorithm: " + name);
}

struct AlgoParams {
    double epsilon_clear = 0.001; // rnsga2 clearing radius
    double delta = 0.3;          // rdnsga2 preference spread
    double rho = 1e-4;           // ASF augmentation coefficient
    double kappa = 0.05;         // pbea fitness scaling
    std::vector<Vec> weights;    // moead-rp; generated from z when empty
};

struct RunConfig {
    AlgorithmId algorithm = AlgorithmId::RNSGA2;
    ProblemSpec problem;
    std::size_t mu = 100;
    std::uint64_t max_evals = 50000;
    std::uint64_t seed = 1;
    RoiSpec roi;
    AlgoParams params;
    UpdateSchedule schedule = default_schedule();
};

inline void validate_config(const RunConfig& cfg)
{
    const ProblemSpec expect = make_problem(cfg.problem.id, cfg.problem.m);
    if (cfg.problem.n != expect.n)
        throw config_error(std::string(problem_name(cfg.problem.id)) + " with m="
                           + std::to_string(cfg.problem.m) + " requires n=" + std::to_string(expect.n));
    const bool nsga_family = cfg.algorithm == AlgorithmId::RNSGA2
                             || cfg.algorithm == AlgorithmId::RDNSGA2
                             || cfg.algorithm == AlgorithmId::GNSGA2;
    if (nsga_family) {
        if (cfg.mu < 4 || cfg.mu % 2 != 0)
            throw config_error("NSGA-II-family algorithms need an even population size >= 4");
    } else if (cfg.mu < 2) {
        throw config_error("population size must be >= 2");
    }
    if (cfg.max_evals < cfg.mu)
        throw config_error("max_evals must be at least the population size");
    validate_roi(cfg.roi, static_cast<std::size_t>(cfg.problem.m));
    if (!(cfg.params.delta >= 0.0 && cfg.params.delta <= 1.0))
        throw config_error("delta must lie in [0,1]");
    if (!(cfg.params.rho > 0.0))
        throw config_error("rho must be positive");
    if (!(cfg.params.kappa > 0.0))
        throw config_error("kappa must be positive");
    if (!(cfg.params.epsilon_clear >= 0.0))
        throw config_error("epsilon_clear must be non-negative");
    if (!cfg.params.weights.empty()) {
        if (cfg.params.weights.size() != cfg.mu)
            throw config_error("weight set size must equal the population size");
        for (const Vec& w : cfg.params.weights) {
            if (w.size() != static_cast<std::size_t>(cfg.problem.m))
                throw config_error("weight vector length must equal m");
            for (double wi : w)
                if (!(wi > 0.0))
                    throw config_error("weight entries must be positive");
        }
    }
    for (std::size_t i = 1; i < cfg.schedule.checkpoints.size(); ++i) {
        if (cfg.schedule.checkpoints[i] <= cfg.schedule.checkpoints[i - 1])
            throw config_error("schedule checkpoints must be strictly increasing");
    }
    if (!cfg.schedule.checkpoints.empty() && cfg.schedule.checkpoints.front() == 0)
        throw config_error("schedule checkpoints must be positive");
}

// ---------------------------------------------------------------------------
// Preference machinery
// ---------------------------------------------------------------------------

/// Augmented achievement scalarizing function:
/// max_i w_i (f_i - z_i) + rho * sum_i w_i (f_i - z_i).
inline double asf(const Vec& f, const Vec& z, const Vec& w, double rho)
{
    check_same_size(f, z);
    check_same_size(f, w);
    double worst = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(w[i] > 0.0))
            throw input_error("asf: weights must be positive");
        const double term = w[i] * (f[i] - z[i]);
        worst = std::max(worst, term);
        total += term;
    }
    return worst + rho * total;
}

/// g-dominance flag: 1 iff f weakly dominates z or z weakly dominates f.
inline int g_flag(const Vec& f, const Vec& z)
{
    return weakly_dominates(f, z) || weakly_dominates(z, f) ? 1 : 0;
}

/// a g-dominates b: higher flag wins; Pareto dominance inside equal flags.
inline bool g_dominates(const Vec& a, const Vec& b, const Vec& z)
{
    const int fa = g_flag(a, z);
    const int fb = g_flag(b, z);
    if (fa != fb)
        return fa > fb;
    return dominates(a, b);
}

/// Population-level normalization context for the r-dominance relation.
struct RDominanceContext {
    double min_dist = 0.0;
    double max_dist = 0.0;
};

inline RDominanceContext r_dominance_context(const std::vector<Vec>& fs, const Vec& z)
{
    if (fs.empty())
        throw input_error("r_dominance_context: empty population");
    RDominanceContext ctx;
    ctx.min_dist = std::numeric_limits<double>::infinity();
    ctx.max_dist = -std::numeric_limits<double>::infinity();
    for (const Vec& f : fs) {
        const double d = euclid(f, z);
        ctx.min_dist = std::min(ctx.min_dist, d);
        ctx.max_dist = std::max(ctx.max_dist, d);
    }
    return ctx;
}

/// a r-dominates b: Pareto dominance, or Pareto-incomparable with a
/// normalized distance advantage D(a,b) < -delta. An equidistant population
/// (max == min) yields D = 0, so only Pareto dominance acts.
inline bool r_dominates(const Vec& a, const Vec& b, const Vec& z, double delta,
                        const RDominanceContext& ctx)
{
    if (dominates(a, b))
        return true;
    if (dominates(b, a))
        return false;
    const double range = ctx.max_dist - ctx.min_dist;
    if (!(range > 0.0))
        return false;
    const double d = (euclid(a, z) - euclid(b, z)) / range;
    return d < -delta;
}

// ---------------------------------------------------------------------------
// R-NSGA-II survival
// ---------------------------------------------------------------------------

namespace detail {

/// Survivor indices under the R-NSGA-II rule: Pareto fronts first; inside the
/// cut front prefer solutions closer to z, with epsilon-clearing demoting all
/// but one representative of any cluster of pairwise distance < epsilon.
inline std::vector<std::size_t> rnsga2_survivor_indices(const std::vector<Vec>& fs, std::size_t mu,
                                                        const Vec& z, double epsilon_clear)
{
    const std::size_t n = fs.size();
    if (n < mu)
        throw input_error("rnsga2_survival: pool smaller than mu");
    const std::vector<std::size_t> rank = pareto_rank(fs);
    const std::size_t nfronts = 1 + *std::max_element(rank.begin(), rank.end());
    std::vector<std::vector<std::size_t>> fronts(nfronts);
    for (std::size_t i = 0; i < n; ++i)
        fronts[rank[i]].push_back(i);

    std::vector<std::size_t> survivors;
    survivors.reserve(mu);
    for (const std::vector<std::size_t>& front : fronts) {
        if (survivors.size() + front.size() <= mu) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            if (survivors.size() == mu)
                return survivors;
            continue;
        }

        // cut front: order by distance to z, then clear
        std::vector<std::size_t> order = front;
        std::vector<double> dist(n, 0.0);
        for (std::size_t i : front)
            dist[i] = euclid(fs[i], z);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return dist[a] < dist[b];
        });
        std::vector<std::size_t> retained;
        std::vector<std::size_t> demoted;
        for (std::size_t idx : order) {
            bool cleared = false;
            if (epsilon_clear > 0.0) {
                for (std::size_t kept : retained) {
                    if (euclid(fs[idx], fs[kept]) < epsilon_clear) {
                        cleared = true;
                        break;
                    }
                }
            }
            (cleared ? demoted : retained).push_back(idx);
        }
        for (std::size_t idx : retained) {
            if (survivors.size() == mu)
                return survivors;
            survivors.push_back(idx);
        }
        for (std::size_t idx : demoted) {
            if (survivors.size() == mu)
                return survivors;
            survivors.push_back(idx);
        }
        return survivors;
    }
    return survivors;
}

} // namespace detail

inline std::vector<Solution> rnsga2_survival(const std::vector<Solution>& pool, std::size_t mu,
                                             const Vec& z, double epsilon_clear)
{
    std::vector<Vec> fs;
    fs.reserve(pool.size());
    for (const Solution& s : pool)
        fs.push_back(s.f);
    std::vector<Solution> out;
    out.reserve(mu);
    for (std::size_t idx : detail::rnsga2_survivor_indices(fs, mu, z, epsilon_clear))
        out.push_back(pool[idx]);
    return out;
}

// ---------------------------------------------------------------------------
// PBEA fitness
// ---------------------------------------------------------------------------

/// Floor on the min-shifted ASF denominator of the preference indicator;
/// keeps the preference amplification finite (the ASF minimizer would
/// otherwise divide by zero).
constexpr double kPbeaSpecificity = 0.03;

namespace detail {

struct PbeaTables {
    std::vector<Vec> fn;        // pool objectives, min-max normalized
    std::vector<double> denom;  // preference denominator per individual
    std::vector<double> fitness;

    double indicator(std::size_t a, std::size_t b) const
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < fn[a].size(); ++d)
            worst = std::max(worst, fn[a][d] - fn[b][d]);
        return worst / denom[b];
    }
};

inline double pbea_exp_term(double indicator, double kappa)
{
    // clamped so that extreme preference amplification cannot overflow
    return std::exp(std::min(700.0, -indicator / kappa));
}

inline PbeaTables pbea_tables(const std::vector<Vec>& fs, const Vec& z, double rho, double kappa)
{
    if (fs.size() < 2)
        throw input_error("pbea_fitness: need at least two solutions");
    PbeaTables t;
    const Bounds b = bounds_of(fs);
    t.fn.reserve(fs.size());
    for (const Vec& f : fs)
        t.fn.push_back(normalize_against(f, b));
    const Vec zn = normalize_against(z, b);
    const Vec ones(z.size(), 1.0);

    std::vector<double> s(fs.size());
    double s_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        s[i] = asf(t.fn[i], zn, ones, rho);
        s_min = std::min(s_min, s[i]);
    }
    t.denom.resize(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        t.denom[i] = std::max(s[i] - s_min, kPbeaSpecificity);

    t.fitness.assign(fs.size(), 0.0);
    for (std::size_t a = 0; a < fs.size(); ++a) {
        for (std::size_t other = 0; other < fs.size(); ++other) {
            if (other == a)
                continue;
            t.fitness[a] -= pbea_exp_term(t.indicator(other, a), kappa);
        }
    }
    return t;
}

} // namespace detail

/// IBEA-style fitness with the preference-based indicator
/// I_p(a,b) = I_eps+(a,b) / max(s_norm(b), floor), computed on objectives
/// normalized over the population. Larger fitness is better.
inline std::vector<double> pbea_fitness(const std::vector<Solution>& pop, const Vec& z, double rho,
                                        double kappa)
{
    if (!(kappa > 0.0) || !(rho > 0.0))
        throw input_error("pbea_fitness: rho and kappa must be positive");
    std::vector<Vec> fs;
    fs.reserve(pop.size());
    for (const Solution& s : pop)
        fs.push_back(s.f);
    return detail::pbea_tables(fs, z, rho, kappa).fitness;
}

// ---------------------------------------------------------------------------
// Decomposition weights
// ---------------------------------------------------------------------------

namespace detail {

inline void simplex_lattice_rec(int level, int left, Vec& acc, double h, std::vector<Vec>& out)
{
    if (static_cast<std::size_t>(level) + 1 == acc.size()) {
        acc[static_cast<std::size_t>(level)] = static_cast<double>(left) * h;
        out.push_back(acc);
        return;
    }
    for (int take = 0; take <= left; ++take) {
        acc[static_cast<std::size_t>(level)] = static_cast<double>(take) * h;
        simplex_lattice_rec(level + 1, left - take, acc, h, out);
    }
}

inline std::vector<Vec> simplex_lattice(std::size_t m, int partitions)
{
    std::vector<Vec> out;
    Vec acc(m, 0.0);
    simplex_lattice_rec(0, partitions, acc, 1.0 / partitions, out);
    return out;
}

inline std::size_t lattice_size(std::size_t m, int partitions)
{
    // C(partitions + m - 1, m - 1)
    std::size_t result = 1;
    for (std::size_t i = 1; i < m; ++i)
        result = result * (static_cast<std::size_t>(partitions) + i) / i;
    return result;
}

} // namespace detail

/// Weight vectors for the decomposition algorithm: a dense simplex lattice is
/// pulled halfway toward the simplex projection of z, then thinned to mu
/// vectors by farthest-point selection starting from the vector nearest to
/// z's direction. Deterministic; all entries strictly positive when z is.
inline std::vector<Vec> decomposition_weights(std::size_t mu, std::size_t m, const Vec& z)
{
    if (mu < 2)
        throw config_error("decomposition needs mu >= 2");
    if (z.size() != m)
        throw config_error("reference point length must equal m");
    double z_sum = 0.0;
    for (double zi : z) {
        if (!(zi > 0.0))
            throw config_error("decomposition weights need a strictly positive reference point");
        z_sum += zi;
    }
    Vec wz(m);
    for (std::size_t i = 0; i < m; ++i)
        wz[i] = z[i] / z_sum;

    int partitions = 1;
    const std::size_t want = std::max<std::size_t>(4 * mu, 300);
    while (detail::lattice_size(m, partitions) < want)
        ++partitions;
    std::vector<Vec> lattice = detail::simplex_lattice(m, partitions);
    for (Vec& w : lattice) {
        for (std::size_t i = 0; i < m; ++i)
            w[i] = 0.5 * w[i] + 0.5 * wz[i];
    }

    std::vector<char> taken(lattice.size(), 0);
    std::vector<Vec> chosen;
    chosen.reserve(mu);
    std::size_t first = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const double d = euclid(lattice[i], wz);
        if (d < best) {
            best = d;
            first = i;
        }
    }
    taken[first] = 1;
    chosen.push_back(lattice[first]);
    std::vector<double> min_dist(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        min_dist[i] = euclid(lattice[i], lattice[first]);
    while (chosen.size() < mu) {
        std::size_t far = 0;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            if (taken[i])
                continue;
            if (min_dist[i] > far_dist) {
                far_dist = min_dist[i];
                far = i;
            }
        }
        taken[far] = 1;
        chosen.push_back(lattice[far]);
        for (std::size_t i = 0; i < lattice.size(); ++i) {
            if (!taken[i])
                min_dist[i] = std::min(min_dist[i], euclid(lattice[i], lattice[far]));
        }
    }
    return chosen;
}

/// Neighborhood index lists (size T) by weight-space distance; the subproblem
/// itself always comes first.
inline std::vector<std::vector<std::size_t>> moead_neighborhoods(const std::vector<Vec>& weights,
                                                                 std::size_t T)
{
    const std::size_t mu = weights.size();
    T = std::max<std::size_t>(1, std::min(T, mu));
    std::vector<std::vector<std::size_t>> nbhd(mu);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < mu; ++i) {
        order.clear();
        for (std::size_t j = 0; j < mu; ++j) {
            if (j != i)
                order.push_back(j);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return euclid(weights[i], weights[a]) < euclid(weights[i], weights[b]);
        });
        nbhd[i].push_back(i);
        nbhd[i].insert(nbhd[i].end(), order.begin(),
                       order.begin() + static_cast<std::ptrdiff_t>(T - 1));
    }
    return nbhd;
}

// ---------------------------------------------------------------------------
// Run loop
// ---------------------------------------------------------------------------

struct Snapshot {
    std::uint64_t evals = 0;
    std::vector<Solution> population;
    std::vector<Solution> archive;
};

struct RunRecord {
    RunConfig config;
    std::vector<Snapshot> snapshots;
    std::vector<Solution> final_population;
    std::vector<Solution> final_archive;
    std::uint64_t evals_used = 0;
};

/// Called at every schedule checkpoint with the just-flushed archive.
using SnapshotSink =
    std::function<void(std::uint64_t evals, const std::vector<Solution>& population,
                       const std::vector<Solution>& archive)>;

namespace detail {

class RunContext {
public:
    RunContext(const RunConfig& cfg, const SnapshotSink* sink, bool keep_snapshots)
        : cfg_(cfg), sink_(sink), keep_(keep_snapshots)
    {
        for (std::uint64_t c : cfg.schedule.checkpoints) {
            if (c <= cfg.max_evals)
                checkpoints_.push_back(c);
        }
    }

    bool budget_left() const { return evals_ < cfg_.max_evals; }
    std::uint64_t evals() const { return evals_; }

    void set_population_view(const std::vector<Solution>* pop) { pop_view_ = pop; }

    Solution eval(Vec x)
    {
        Vec f = evaluate(cfg_.problem, x);
        ++evals_;
        Solution s{std::move(x), std::move(f), evals_};
        archive_.submit(s);
        if (next_checkpoint_ < checkpoints_.size() && evals_ == checkpoints_[next_checkpoint_]) {
            archive_.flush();
            if (keep_)
                snapshots_.push_back(Snapshot{evals_, *pop_view_, archive_.members()});
            if (sink_ && *sink_)
                (*sink_)(evals_, *pop_view_, archive_.members());
            ++next_checkpoint_;
        }
        return s;
    }

    void finish()
    {
        archive_.flush();
    }

    const Archive& archive() const { return archive_; }
    std::vector<Snapshot> take_snapshots() { return std::move(snapshots_); }

private:
    const RunConfig& cfg_;
    const SnapshotSink* sink_;
    bool keep_;
    Archive archive_;
    std::vector<std::uint64_t> checkpoints_;
    std::size_t next_checkpoint_ = 0;
    std::uint64_t evals_ = 0;
    const std::vector<Solution>* pop_view_ = nullptr;
    std::vector<Snapshot> snapshots_;
};

struct Annotations {
    std::vector<std::size_t> rank;
    std::vector<double> metric;
    bool metric_bigger_better = false;
};

/// Binary tournament on (rank, metric); the first draw wins ties.
inline std::size_t tournament(const Annotations& ann, Rng& rng)
{
    const std::size_t n = ann.rank.size();
    const std::size_t i = rng.below(n);
    const std::size_t j = rng.below(n);
    if (ann.rank[j] < ann.rank[i])
        return j;
    if (ann.rank[i] < ann.rank[j])
        return i;
    const bool j_wins = ann.metric_bigger_better ? ann.metric[j] > ann.metric[i]
                                                 : ann.metric[j] < ann.metric[i];
    return j_wins ? j : i;
}

inline std::vector<Vec> objectives_of(const std::vector<Solution>& pop)
{
    std::vector<Vec> fs;
    fs.reserve(pop.size());
    for (const Solution& s : pop)
        fs.push_back(s.f);
    return fs;
}

/// Front fill with crowding-distance truncation of the cut front, generic
/// over the dominance relation; returns survivor indices.
template <typename Dom>
std::vector<std::size_t> crowding_survivor_indices(const std::vector<Vec>& fs, std::size_t mu,
                                                   Dom&& dom)
{
    const std::vector<std::size_t> rank = nondominated_rank(fs, dom);
    const std::size_t nfronts = 1 + *std::max_element(rank.begin(), rank.end());
    std::vector<std::vector<std::size_t>> fronts(nfronts);
    for (std::size_t i = 0; i < fs.size(); ++i)
        fronts[rank[i]].push_back(i);
    std::vector<std::size_t> survivors;
    survivors.reserve(mu);
    for (const std::vector<std::size_t>& front : fronts) {
        if (survivors.size() + front.size() <= mu) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            if (survivors.size() == mu)
                break;
            continue;
        }
        const std::vector<double> cd = crowding_distance(fs, front);
        std::vector<std::size_t> pos(front.size());
        for (std::size_t i = 0; i < front.size(); ++i)
            pos[i] = i;
        std::stable_sort(pos.begin(), pos.end(),
                         [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
        for (std::size_t i : pos) {
            if (survivors.size() == mu)
                break;
            survivors.push_back(front[i]);
        }
        break;
    }
    return survivors;
}

/// Per-individual crowding distance within each front of the population.
inline std::vector<double> crowding_by_front(const std::vector<Vec>& fs,
                                             const std::vector<std::size_t>& rank)
{
    std::vector<double> out(fs.size(), 0.0);
    const std::size_t nfronts = fs.empty() ? 0 : 1 + *std::max_element(rank.begin(), rank.end());
    std::vector<std::vector<std::size_t>> fronts(nfronts);
    for (std::size_t i = 0; i < fs.size(); ++i)
        fronts[rank[i]].push_back(i);
    for (const std::vector<std::size_t>& front : fronts) {
        if (front.empty())
            continue;
        const std::vector<double> cd = crowding_distance(fs, front);
        for (std::size_t i = 0; i < front.size(); ++i)
            out[front[i]] = cd[i];
    }
    return out;
}

} // namespace detail

/// One generation of the decomposition algorithm: every subproblem draws two
/// distinct neighborhood parents, produces one mutated SBX child via
/// `eval_one`, and the child replaces any neighbor it beats on that
/// neighbor's ASF subproblem. `eval_one` returns nullopt once the evaluation
/// budget is exhausted, which ends the generation early.
template <typename EvalFn>
void decomp_generation_impl(std::vector<Solution>& pop, const std::vector<Vec>& weights,
                            const std::vector<std::vector<std::size_t>>& nbhd, const Vec& z,
                            double rho, Rng& sel_rng, Rng& var_rng, EvalFn&& eval_one)
{
    const std::size_t mu = pop.size();
    for (std::size_t i = 0; i < mu; ++i) {
        const std::vector<std::size_t>& b = nbhd[i];
        std::size_t pa;
        std::size_t pb;
        if (b.size() >= 2) {
            const std::size_t u = sel_rng.below(b.size());
            std::size_t v = sel_rng.below(b.size() - 1);
            if (v >= u)
                ++v;
            pa = b[u];
            pb = b[v];
        } else {
            // random pairing fallback for degenerate neighborhoods
            pa = sel_rng.below(mu);
            std::size_t v = sel_rng.below(mu - 1);
            if (v >= pa)
                ++v;
            pb = v;
        }
        auto children = sbx_crossover(pop[pa].x, pop[pb].x, kSbxEta, var_rng);
        Vec child_x = poly_mutation(children.first, kPmEta,
                                    1.0 / static_cast<double>(pop[pa].x.size()), var_rng);
        std::optional<Solution> child = eval_one(std::move(child_x));
        if (!child)
            return;
        for (std::size_t j : b) {
            if (asf(child->f, z, weights[j], rho) < asf(pop[j].f, z, weights[j], rho))
                pop[j] = *child;
        }
    }
}

/// Standalone decomposition generation used outside the run loop: evaluates
/// children directly against the problem (no budget accounting).
inline std::vector<Solution> decomp_run_step(const std::vector<Solution>& pop,
                                             const std::vector<Vec>& weights, const Vec& z,
                                             double rho, const ProblemSpec& problem, Rng& sel_rng,
                                             Rng& var_rng)
{
    if (pop.size() < 2)
        throw config_error("decomposition needs mu >= 2");
    if (weights.size() != pop.size())
        throw input_error("decomp_run_step: one weight vector per individual required");
    std::vector<Solution> next = pop;
    const auto nbhd = moead_neighborhoods(weights, std::max<std::size_t>(2, pop.size() / 10));
    decomp_generation_impl(next, weights, nbhd, z, rho, sel_rng, var_rng,
                           [&](Vec x) -> std::optional<Solution> {
                               Vec f = evaluate(problem, x);
                               return Solution{std::move(x), std::move(f), 0};
                           });
    return next;
}

namespace detail {

inline Annotations annotate(const std::vector<Solution>& pop, const RunConfig& cfg)
{
    Annotations ann;
    const std::vector<Vec> fs = objectives_of(pop);
    switch (cfg.algorithm) {
    case AlgorithmId::RNSGA2: {
        ann.rank = pareto_rank(fs);
        ann.metric.reserve(fs.size());
        for (const Vec& f : fs)
            ann.metric.push_back(euclid(f, cfg.roi.z));
        ann.metric_bigger_better = false;
        break;
    }
    case AlgorithmId::RDNSGA2: {
        const RDominanceContext ctx = r_dominance_context(fs, cfg.roi.z);
        ann.rank = nondominated_rank(fs, [&](const Vec& a, const Vec& b) {
            return r_dominates(a, b, cfg.roi.z, cfg.params.delta, ctx);
        });
        ann.metric = crowding_by_front(fs, ann.rank);
        ann.metric_bigger_better = true;
        break;
    }
    case AlgorithmId::GNSGA2: {
        ann.rank = nondominated_rank(fs, [&](const Vec& a, const Vec& b) {
            return g_dominates(a, b, cfg.roi.z);
        });
        ann.metric = crowding_by_front(fs, ann.rank);
        ann.metric_bigger_better = true;
        break;
    }
    case AlgorithmId::PBEA: {
        ann.rank.assign(fs.size(), 0);
        ann.metric = pbea_fitness(pop, cfg.roi.z, cfg.params.rho, cfg.params.kappa);
        ann.metric_bigger_better = true;
        break;
    }
    case AlgorithmId::MOEAD_RP:
        throw config_error("decomposition algorithm has no tournament annotations");
    }
    return ann;
}

inline std::vector<Solution> survival(std::vector<Solution> pool, const RunConfig& cfg)
{
    const std::vector<Vec> fs = objectives_of(pool);
    std::vector<std::size_t> chosen;
    switch (cfg.algorithm) {
    case AlgorithmId::RNSGA2:
        chosen = rnsga2_survivor_indices(fs, cfg.mu, cfg.roi.z, cfg.params.epsilon_clear);
        break;
    case AlgorithmId::RDNSGA2: {
        const RDominanceContext ctx = r_dominance_context(fs, cfg.roi.z);
        chosen = crowding_survivor_indices(fs, cfg.mu, [&](const Vec& a, const Vec& b) {
            return r_dominates(a, b, cfg.roi.z, cfg.params.delta, ctx);
        });
        break;
    }
    case AlgorithmId::GNSGA2:
        chosen = crowding_survivor_indices(fs, cfg.mu, [&](const Vec& a, const Vec& b) {
            return g_dominates(a, b, cfg.roi.z);
        });
        break;
    case AlgorithmId::PBEA: {
        // IBEA environmental selection: drop the worst individual and update
        // the remaining fitness values until mu are left.
        PbeaTables t = pbea_tables(fs, cfg.roi.z, cfg.params.rho, cfg.params.kappa);
        std::vector<char> alive(fs.size(), 1);
        std::size_t alive_count = fs.size();
        while (alive_count > cfg.mu) {
            std::size_t worst = fs.size();
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (alive[i] && (worst == fs.size() || t.fitness[i] < t.fitness[worst]))
                    worst = i;
            }
            alive[worst] = 0;
            --alive_count;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (alive[i])
                    t.fitness[i] += pbea_exp_term(t.indicator(worst, i), cfg.params.kappa);
            }
        }
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (alive[i])
                chosen.push_back(i);
        }
        break;
    }
    case AlgorithmId::MOEAD_RP:
        throw config_error("decomposition algorithm has no generational survival");
    }
    std::vector<Solution> next;
    next.reserve(chosen.size());
    for (std::size_t idx : chosen)
        next.push_back(std::move(pool[idx]));
    return next;
}

inline Vec random_point(std::size_t n, Rng& rng)
{
    Vec x(n);
    for (double& v : x)
        v = rng.uniform();
    return x;
}

} // namespace detail

/// Executes a run: exactly max_evals problem evaluations, every evaluated
/// solution submitted to the archive, archive flushed at each schedule
/// checkpoint and at termination. Bit-reproducible for a fixed config.
inline RunRecord run(const RunConfig& cfg, const SnapshotSink* sink, bool keep_snapshots)
{
    validate_config(cfg);
    detail::RunContext ctx(cfg, sink, keep_snapshots);
    const std::size_t n = static_cast<std::size_t>(cfg.problem.n);
    const double pm = 1.0 / static_cast<double>(n);

    Rng init_rng(derive_seed(cfg.seed, rng_stream::init));
    Rng var_rng(derive_seed(cfg.seed, rng_stream::variation));
    Rng sel_rng(derive_seed(cfg.seed, rng_stream::selection));

    std::vector<Solution> pop;
    pop.reserve(cfg.mu);
    ctx.set_population_view(&pop);
    for (std::size_t i = 0; i < cfg.mu && ctx.budget_left(); ++i)
        pop.push_back(ctx.eval(detail::random_point(n, init_rng)));

    if (cfg.algorithm == AlgorithmId::MOEAD_RP) {
        const std::vector<Vec> weights =
            cfg.params.weights.empty()
                ? decomposition_weights(cfg.mu, static_cast<std::size_t>(cfg.problem.m), cfg.roi.z)
                : cfg.params.weights;
        const auto nbhd = moead_neighborhoods(weights, std::max<std::size_t>(2, cfg.mu / 10));
        while (ctx.budget_left()) {
            decomp_generation_impl(pop, weights, nbhd, cfg.roi.z, cfg.params.rho, sel_rng, var_rng,
                                   [&](Vec x) -> std::optional<Solution> {
                                       if (!ctx.budget_left())
                                           return std::nullopt;
                                       return ctx.eval(std::move(x));
                                   });
        }
    } else {
        detail::Annotations ann = detail::annotate(pop, cfg);
        while (ctx.budget_left()) {
            std::vector<Solution> offspring;
            offspring.reserve(cfg.mu);
            while (offspring.size() < cfg.mu && ctx.budget_left()) {
                const std::size_t pa = detail::tournament(ann, sel_rng);
                const std::size_t pb = detail::tournament(ann, sel_rng);
                auto children = sbx_crossover(pop[pa].x, pop[pb].x, kSbxEta, var_rng);
                offspring.push_back(
                    ctx.eval(poly_mutation(children.first, kPmEta, pm, var_rng)));
                if (offspring.size() < cfg.mu && ctx.budget_left()) {
                    offspring.push_back(
                        ctx.eval(poly_mutation(children.second, kPmEta, pm, var_rng)));
                }
            }
            if (offspring.empty())
                break;
            std::vector<Solution> pool = pop;
            pool.insert(pool.end(), offspring.begin(), offspring.end());
            pop = detail::survival(std::move(pool), cfg);
            ann = detail::annotate(pop, cfg);
        }
    }

    ctx.finish();
    RunRecord record;
    record.config = cfg;
    record.snapshots = ctx.take_snapshots();
    record.final_population = std::move(pop);
    record.final_archive = ctx.archive().members();
    record.evals_used = ctx.evals();
    return record;
}

inline RunRecord run(const RunConfig& cfg)
{
    return run(cfg, nullptr, true);
}

} // namespace pbemo

#endif
