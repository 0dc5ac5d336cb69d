#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace schoolmatch {

// Sentinel shared by "student is unassigned" and "threshold is the cutoff".
inline constexpr int kNone = -1;

using PreferenceOrder = std::vector<int>;  // acceptable prefix, most preferred first
using CapacityProfile = std::vector<int>;

// A student id or the cutoff sentinel, compared in some school's preference
// order. The cutoff sits at the end of the acceptable prefix.
struct Threshold {
    int student = kNone;

    bool is_cutoff() const { return student == kNone; }
    friend bool operator==(const Threshold &, const Threshold &) = default;
};

enum class Setting { I, II, III };

struct ValidationError : std::runtime_error {
    std::vector<std::string> issues;

    explicit ValidationError(std::vector<std::string> all)
        : std::runtime_error(all.empty() ? "invalid instance" : all.front()),
          issues(std::move(all))
    {
    }
};

class Instance {
public:
    Instance() = default;
    Instance(std::vector<std::string> student_names,
             std::vector<std::string> school_names,
             std::vector<PreferenceOrder> student_prefs,
             std::vector<PreferenceOrder> school_prefs,
             CapacityProfile capacities);

    int student_count() const { return static_cast<int>(student_prefs_.size()); }
    int school_count() const { return static_cast<int>(school_prefs_.size()); }

    const std::vector<std::string> & student_names() const { return student_names_; }
    const std::vector<std::string> & school_names() const { return school_names_; }
    const PreferenceOrder & student_prefs(int s) const { return student_prefs_[s]; }
    const PreferenceOrder & school_prefs(int h) const { return school_prefs_[h]; }
    const CapacityProfile & capacities() const { return capacities_; }
    int capacity(int h) const { return capacities_[h]; }

    int student_index(const std::string & name) const;
    int school_index(const std::string & name) const;

    // Rank of school h (or kNone for the cutoff) in student s's order.
    // Schools absent from the prefix rank strictly below the cutoff.
    int student_rank(int s, int h) const
    {
        return h == kNone ? static_cast<int>(student_prefs_[s].size()) : student_rank_[s][h];
    }
    int school_rank(int h, int s) const
    {
        return s == kNone ? static_cast<int>(school_prefs_[h].size()) : school_rank_[h][s];
    }

    bool student_prefers(int s, int h_a, int h_b) const
    {
        return student_rank(s, h_a) < student_rank(s, h_b);
    }
    bool school_prefers(int h, int s_a, int s_b) const
    {
        return school_rank(h, s_a) < school_rank(h, s_b);
    }

    bool student_acceptable(int s, int h) const { return student_prefers(s, h, kNone); }
    bool school_acceptable(int h, int s) const { return school_prefers(h, s, kNone); }
    bool mutually_acceptable(int s, int h) const
    {
        return student_acceptable(s, h) && school_acceptable(h, s);
    }

    // True iff the school ranks s strictly above the threshold value.
    bool before_threshold(int h, int s, const Threshold & t) const
    {
        return school_rank(h, s) < school_rank(h, t.student);
    }

    friend bool operator==(const Instance &, const Instance &);

    // With a replaced preference list for one student (audit machinery).
    Instance with_student_prefs(int s, PreferenceOrder replacement) const;

private:
    void rebuild_tables();

    std::vector<std::string> student_names_;
    std::vector<std::string> school_names_;
    std::vector<PreferenceOrder> student_prefs_;
    std::vector<PreferenceOrder> school_prefs_;
    CapacityProfile capacities_;
    std::vector<std::vector<int>> student_rank_;  // [s][h]
    std::vector<std::vector<int>> school_rank_;   // [h][s]
};

struct Scenario {
    Setting setting = Setting::I;
    std::vector<int> round1;     // S1
    std::vector<int> defectors;  // S2, Setting III only
    std::vector<int> newcomers;  // N
};

// Throws ValidationError listing every violation.
Instance validate_instance(std::vector<std::string> student_names,
                           std::vector<std::string> school_names,
                           std::vector<PreferenceOrder> student_prefs,
                           std::vector<PreferenceOrder> school_prefs,
                           CapacityProfile capacities);

struct Example1 {
    Instance instance;
    Scenario scenario;  // Setting II, S1 = {A, C}, N = {B}
};

Example1 build_example1();
Instance build_example2();

struct RandomSpec {
    std::uint64_t seed = 0;
    int students = 0;
    int schools = 0;
    int capacity_min = 1;
    int capacity_max = 1;
    double student_cutoff_density = 0.0;  // probability a school falls below a student's cutoff
    double school_cutoff_density = 0.0;
};

Instance generate_random(const RandomSpec & spec);

}  // namespace schoolmatch
