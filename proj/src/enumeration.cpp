#include <schoolmatch/enumeration.hpp>

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace schoolmatch {

std::vector<int> feasible_assignments(const Instance & instance, const Matching & me,
                                      const CapacityProfile & base_caps, int student,
                                      std::span<const int> pool)
{
    std::vector<int> out;
    for (int h : instance.student_prefs(student)) {
        if (! instance.school_acceptable(h, student))
            continue;
        Threshold lps = lps_assigned(instance, me, h);
        if (! lps.is_cutoff() && instance.before_threshold(h, student, lps)) {
            // she outranks an admit who stays put; anything below h would block
            out.push_back(h);
            return out;
        }
        Threshold bs = bs_preferring(instance, me, h, pool);
        if (bs.is_cutoff() || instance.before_threshold(h, student, bs))
            out.push_back(h);  // she joins as the new worst, harmlessly
        // walking past an under-filled h is allowed: it stays wanted (by her,
        // and possibly others) and later newcomers must fill it
    }
    out.push_back(kNone);
    return out;
}

ExtensionStream::ExtensionStream(const Instance & instance, Matching seed,
                                 CapacityProfile base_caps, std::vector<int> newcomers)
    : instance_(instance),
      working_(std::move(seed)),
      base_caps_(std::move(base_caps)),
      newcomers_(std::move(newcomers)),
      lps_rank_(instance.school_count(), INT_MAX),
      bs_rank_(instance.school_count(), INT_MAX)
{
    for (int h = 0; h < instance_.school_count(); ++h) {
        Threshold worst = lps_assigned(instance_, working_, h);
        if (! worst.is_cutoff())
            lps_rank_[h] = instance_.school_rank(h, worst.student);
    }
    std::vector<bool> is_newcomer(instance_.student_count(), false);
    for (int s : newcomers_)
        is_newcomer[s] = true;
    for (int s = 0; s < instance_.student_count(); ++s) {
        if (is_newcomer[s])
            continue;
        for (int h : instance_.student_prefs(s)) {
            if (h == working_.school_of(s))
                break;
            if (instance_.school_acceptable(h, s))
                bs_rank_[h] = std::min(bs_rank_[h], instance_.school_rank(h, s));
        }
    }
}

std::vector<int> ExtensionStream::feasible_for(int student)
{
    std::vector<int> out;
    for (int h : instance_.student_prefs(student)) {
        ++cost_;
        if (! instance_.school_acceptable(h, student))
            continue;
        int r = instance_.school_rank(h, student);
        if (working_.load(h) > 0 && r < lps_rank_[h]) {
            out.push_back(h);
            return out;
        }
        if (r < bs_rank_[h])
            out.push_back(h);
    }
    out.push_back(kNone);
    return out;
}

int ExtensionStream::hole_deficit()
{
    int deficit = 0;
    for (int h = 0; h < instance_.school_count(); ++h) {
        ++cost_;
        if (working_.load(h) < base_caps_[h] && bs_rank_[h] != INT_MAX)
            deficit += base_caps_[h] - working_.load(h);
    }
    return deficit;
}

void ExtensionStream::apply(int student, int school, Frame & frame)
{
    frame.saved_lps_rank = lps_rank_;
    frame.saved_bs_rank = bs_rank_;
    cost_ += instance_.school_count();
    // she joins the constraining pool: schools she still prefers gain a
    // candidate, her own school a (possibly worst) admit
    for (int h : instance_.student_prefs(student)) {
        ++cost_;
        if (h == school)
            break;
        if (instance_.school_acceptable(h, student))
            bs_rank_[h] = std::min(bs_rank_[h], instance_.school_rank(h, student));
    }
    if (school == kNone)
        return;
    working_.assign(instance_, student, school);
    int r = instance_.school_rank(school, student);
    lps_rank_[school] = working_.load(school) == 1 ? r : std::max(lps_rank_[school], r);
}

void ExtensionStream::undo(int student, const Frame & frame)
{
    lps_rank_ = frame.saved_lps_rank;
    bs_rank_ = frame.saved_bs_rank;
    cost_ += instance_.school_count();
    working_.unassign(student);
}

void ExtensionStream::descend()
{
    // feasible_for never returns an empty set, so every kept branch reaches a leaf
    while (stack_.size() < newcomers_.size()) {
        if (hole_deficit() > static_cast<int>(newcomers_.size() - stack_.size()))
            return;  // too few newcomers left to fill every wanted seat
        int student = newcomers_[stack_.size()];
        Frame frame;
        frame.options = feasible_for(student);
        if (frame.options.empty())
            throw std::logic_error("extension stream: empty feasible set");
        stack_.push_back(std::move(frame));
        Frame & top = stack_.back();
        apply(student, top.options[top.next_option++], top);
    }
}

bool ExtensionStream::advance()
{
    while (! stack_.empty()) {
        Frame & frame = stack_.back();
        int student = newcomers_[stack_.size() - 1];
        undo(student, frame);
        if (frame.next_option < frame.options.size()) {
            apply(student, frame.options[frame.next_option++], frame);
            return true;
        }
        stack_.pop_back();
    }
    return false;
}

std::optional<Matching> ExtensionStream::next()
{
    if (done_)
        return std::nullopt;
    last_yield_cost_ = cost_;
    for (;;) {
        if (started_ && ! advance()) {
            done_ = true;
            return std::nullopt;
        }
        started_ = true;
        descend();
        if (stack_.size() == newcomers_.size() && hole_deficit() == 0)
            return working_;
        // a pruned branch or a leaf with a still-wanted open seat: keep moving
    }
}

std::set<std::vector<int>> brute_force_extensions(const Instance & instance, const Matching & m,
                                                  const CapacityProfile & base_caps,
                                                  std::span<const int> newcomers)
{
    std::vector<std::vector<int>> choices;
    for (int s : newcomers) {
        std::vector<int> c{kNone};
        for (int h : instance.student_prefs(s))
            if (instance.school_acceptable(h, s))
                c.push_back(h);
        choices.push_back(std::move(c));
    }

    std::set<std::vector<int>> out;
    std::vector<std::size_t> odometer(newcomers.size(), 0);
    for (;;) {
        Matching candidate = m;
        for (std::size_t i = 0; i < newcomers.size(); ++i)
            if (int h = choices[i][odometer[i]]; h != kNone)
                candidate.assign(instance, newcomers[i], h);
        if (is_stable(instance, candidate, base_caps))
            out.insert(candidate.assignment());
        std::size_t i = 0;
        while (i < odometer.size() && ++odometer[i] == choices[i].size())
            odometer[i++] = 0;
        if (i == odometer.size())
            break;
    }
    return out;
}

}  // namespace schoolmatch
