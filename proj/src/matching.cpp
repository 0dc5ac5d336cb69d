#include <schoolmatch/matching.hpp>

#include <algorithm>
#include <stdexcept>

namespace schoolmatch {

Matching::Matching(const Instance & instance)
    : assignment_(instance.student_count(), kNone), rosters_(instance.school_count())
{
}

Matching::Matching(const Instance & instance, std::vector<int> assignment)
    : assignment_(std::move(assignment)), rosters_(instance.school_count())
{
    if (static_cast<int>(assignment_.size()) != instance.student_count())
        throw std::invalid_argument("assignment size does not match student count");
    for (int s = 0; s < instance.student_count(); ++s) {
        int h = assignment_[s];
        if (h == kNone)
            continue;
        if (h < 0 || h >= instance.school_count())
            throw std::invalid_argument("assignment references unknown school");
        if (! instance.mutually_acceptable(s, h))
            throw std::invalid_argument("assignment of " + instance.student_names()[s] + " to " +
                                        instance.school_names()[h] + " is not mutually acceptable");
        rosters_[h].push_back(s);
    }
}

std::vector<int> Matching::matched_students() const
{
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(assignment_.size()); ++s)
        if (assignment_[s] != kNone)
            out.push_back(s);
    return out;
}

void Matching::assign(const Instance & instance, int s, int h)
{
    if (! instance.mutually_acceptable(s, h))
        throw std::invalid_argument("assignment of " + instance.student_names()[s] + " to " +
                                    instance.school_names()[h] + " is not mutually acceptable");
    unassign(s);
    assignment_[s] = h;
    rosters_[h].push_back(s);
}

void Matching::unassign(int s)
{
    int h = assignment_[s];
    if (h == kNone)
        return;
    auto & roster = rosters_[h];
    roster.erase(std::find(roster.begin(), roster.end(), s));
    assignment_[s] = kNone;
}

}  // namespace schoolmatch
