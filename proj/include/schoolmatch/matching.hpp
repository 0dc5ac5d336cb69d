#pragma once

#include <schoolmatch/instance.hpp>

#include <vector>

namespace schoolmatch {

// Per-student assignment with derived rosters and loads. Assigning an
// unacceptable pair throws; the mutual-acceptability invariant of the model
// holds by construction.
class Matching {
public:
    Matching() = default;
    explicit Matching(const Instance & instance);
    Matching(const Instance & instance, std::vector<int> assignment);

    int school_of(int s) const { return assignment_[s]; }
    bool is_matched(int s) const { return assignment_[s] != kNone; }
    const std::vector<int> & roster(int h) const { return rosters_[h]; }
    int load(int h) const { return static_cast<int>(rosters_[h].size()); }
    const std::vector<int> & assignment() const { return assignment_; }

    std::vector<int> matched_students() const;

    void assign(const Instance & instance, int s, int h);
    void unassign(int s);

    // roster ordering is construction history, not state
    friend bool operator==(const Matching & a, const Matching & b)
    {
        return a.assignment_ == b.assignment_;
    }

private:
    std::vector<int> assignment_;
    std::vector<std::vector<int>> rosters_;
};

}  // namespace schoolmatch
