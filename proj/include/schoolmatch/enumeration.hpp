#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>
#include <schoolmatch/stability.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace schoolmatch {

// All candidate assignments for `student` given the partial extension `me`:
// scans her list in decreasing preference, kNone standing for the unassigned
// option. Guaranteed nonempty. `pool` is the set of students already placed
// (possibly at nothing) whose lists constrain stability. A candidate never
// creates envy of a filled school (type 1); it may leave an under-filled
// school that some student still wants, which later newcomers must fill for
// the completed extension to be stable.
std::vector<int> feasible_assignments(const Instance & instance, const Matching & me,
                                      const CapacityProfile & base_caps, int student,
                                      std::span<const int> pool);

// Single-consumer stream of all stable extensions of a seed matching by a
// list of newcomers, depth-first with schools most-preferred-first. Bounded
// memory (stack depth = newcomer count); per-school least-assigned and
// best-preferring thresholds are maintained incrementally. Branches whose
// unfilled-seat debt exceeds the remaining newcomers are pruned, and a leaf
// is yielded only once every wanted school is filled.
class ExtensionStream {
public:
    ExtensionStream(const Instance & instance, Matching seed, CapacityProfile base_caps,
                    std::vector<int> newcomers);

    std::optional<Matching> next();

    // Preference-rank comparison work since the previous yield (or since
    // construction, for the first); used to check the delay bound.
    std::int64_t last_delay_cost() const { return cost_ - last_yield_cost_; }
    std::int64_t total_cost() const { return cost_; }

private:
    struct Frame {
        std::vector<int> options;
        std::size_t next_option = 0;
        // snapshots taken before this frame's current option was applied
        std::vector<int> saved_lps_rank;
        std::vector<int> saved_bs_rank;
    };

    std::vector<int> feasible_for(int student);
    void apply(int student, int school, Frame & frame);
    void undo(int student, const Frame & frame);
    // under-filled schools some student still wants, weighted by open seats
    int hole_deficit();
    void descend();  // build frames until every newcomer is placed or pruned
    bool advance();  // move to the next unexplored option, popping as needed

    const Instance & instance_;
    Matching working_;
    CapacityProfile base_caps_;
    std::vector<int> newcomers_;
    std::vector<Frame> stack_;
    std::vector<int> lps_rank_;  // per school; rank of worst assigned, INT_MAX if roster empty
    std::vector<int> bs_rank_;   // per school; rank of best pooled student preferring it
    std::int64_t cost_ = 0;
    std::int64_t last_yield_cost_ = 0;
    bool started_ = false;
    bool done_ = false;
};

// Brute-force oracle: every assignment vector of the newcomers, filtered to
// stable extensions. Exponential; test scale only.
std::set<std::vector<int>> brute_force_extensions(const Instance & instance, const Matching & m,
                                                  const CapacityProfile & base_caps,
                                                  std::span<const int> newcomers);

}  // namespace schoolmatch
