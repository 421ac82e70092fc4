#ifndef PBEMO_ARCHIVE_HPP
#define PBEMO_ARCHIVE_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pbemo/core.hpp"

namespace pbemo {

/// The unbounded external archive: after every flush, members() is exactly
/// the non-dominated subset of all solutions submitted so far. Submissions
/// buffer in `pending` until the next flush; among objective-space duplicates
/// the earliest birth_eval survives. Member order is stable (insertion
/// order), which keeps serialization deterministic.
class Archive {
public:
    void submit(Solution s) { pending_.push_back(std::move(s)); }

    /// Applies all pending submissions. Returns the member count afterwards.
    std::size_t flush()
    {
        for (Solution& cand : pending_)
            insert(std::move(cand));
        pending_.clear();
        return members_.size();
    }

    const std::vector<Solution>& members() const { return members_; }
    std::size_t pending_count() const { return pending_.size(); }

    void clear()
    {
        members_.clear();
        pending_.clear();
    }

private:
    void insert(Solution&& cand)
    {
        for (Solution& m : members_) {
            if (m.f == cand.f) {
                if (cand.birth_eval < m.birth_eval)
                    m = std::move(cand);
                return;
            }
            if (weakly_dominates(m.f, cand.f))
                return;
        }
        members_.erase(std::remove_if(members_.begin(), members_.end(),
                                      [&](const Solution& m) { return dominates(cand.f, m.f); }),
                       members_.end());
        members_.push_back(std::move(cand));
    }

    std::vector<Solution> members_;
    std::vector<Solution> pending_;
};

/// Evaluation counts at which the archive is updated during a run.
struct UpdateSchedule {
    std::vector<std::uint64_t> checkpoints;
};

/// The experimental schedule: 100, 200, ..., 1000, 2000, 3000, ..., 50000.
inline UpdateSchedule default_schedule()
{
    UpdateSchedule s;
    for (std::uint64_t c = 100; c <= 1000; c += 100)
        s.checkpoints.push_back(c);
    for (std::uint64_t c = 2000; c <= 50000; c += 1000)
        s.checkpoints.push_back(c);
    return s;
}

} // namespace pbemo

#endif
