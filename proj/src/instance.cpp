#include <schoolmatch/instance.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>

namespace schoolmatch {

Instance::Instance(std::vector<std::string> student_names, std::vector<std::string> school_names,
                   std::vector<PreferenceOrder> student_prefs,
                   std::vector<PreferenceOrder> school_prefs, CapacityProfile capacities)
    : student_names_(std::move(student_names)),
      school_names_(std::move(school_names)),
      student_prefs_(std::move(student_prefs)),
      school_prefs_(std::move(school_prefs)),
      capacities_(std::move(capacities))
{
    rebuild_tables();
}

void Instance::rebuild_tables()
{
    const int n = student_count();
    const int m = school_count();
    student_rank_.assign(n, std::vector<int>(m, m + 1));
    school_rank_.assign(m, std::vector<int>(n, n + 1));
    for (int s = 0; s < n; ++s)
        for (std::size_t r = 0; r < student_prefs_[s].size(); ++r)
            student_rank_[s][student_prefs_[s][r]] = static_cast<int>(r);
    for (int h = 0; h < m; ++h)
        for (std::size_t r = 0; r < school_prefs_[h].size(); ++r)
            school_rank_[h][school_prefs_[h][r]] = static_cast<int>(r);
}

int Instance::student_index(const std::string & name) const
{
    auto it = std::find(student_names_.begin(), student_names_.end(), name);
    if (it == student_names_.end())
        throw std::out_of_range("unknown student: " + name);
    return static_cast<int>(it - student_names_.begin());
}

int Instance::school_index(const std::string & name) const
{
    auto it = std::find(school_names_.begin(), school_names_.end(), name);
    if (it == school_names_.end())
        throw std::out_of_range("unknown school: " + name);
    return static_cast<int>(it - school_names_.begin());
}

bool operator==(const Instance & a, const Instance & b)
{
    return a.student_names_ == b.student_names_ && a.school_names_ == b.school_names_ &&
        a.student_prefs_ == b.student_prefs_ && a.school_prefs_ == b.school_prefs_ &&
        a.capacities_ == b.capacities_;
}

Instance Instance::with_student_prefs(int s, PreferenceOrder replacement) const
{
    Instance copy = *this;
    copy.student_prefs_[s] = std::move(replacement);
    copy.rebuild_tables();
    return copy;
}

namespace {

void check_prefs(const std::vector<PreferenceOrder> & prefs, int opposite_count,
                 const std::vector<std::string> & owner_names, const char * owner_kind,
                 const char * entry_kind, std::vector<std::string> & issues)
{
    for (std::size_t i = 0; i < prefs.size(); ++i) {
        std::set<int> seen;
        for (int entry : prefs[i]) {
            if (entry < 0 || entry >= opposite_count)
                issues.push_back(std::string(owner_kind) + " " + owner_names[i] +
                                 ": unknown " + entry_kind + " index " + std::to_string(entry));
            else if (! seen.insert(entry).second)
                issues.push_back(std::string(owner_kind) + " " + owner_names[i] +
                                 ": duplicate " + entry_kind + " at index " + std::to_string(entry));
        }
    }
}

}  // namespace

Instance validate_instance(std::vector<std::string> student_names,
                           std::vector<std::string> school_names,
                           std::vector<PreferenceOrder> student_prefs,
                           std::vector<PreferenceOrder> school_prefs, CapacityProfile capacities)
{
    std::vector<std::string> issues;
    if (student_prefs.size() != student_names.size())
        issues.push_back("student preference list count does not match roster size");
    if (school_prefs.size() != school_names.size())
        issues.push_back("school preference list count does not match roster size");
    if (capacities.size() != school_names.size())
        issues.push_back("capacity count does not match school roster size");
    for (std::size_t h = 0; h < capacities.size(); ++h)
        if (capacities[h] < 0)
            issues.push_back("school " + school_names[h] + ": negative capacity");
    for (auto [names, kind] : {std::pair{&student_names, "student"}, {&school_names, "school"}}) {
        std::set<std::string> seen;
        for (const auto & name : *names)
            if (! seen.insert(name).second)
                issues.push_back(std::string("duplicate ") + kind + " name: " + name);
    }
    if (student_prefs.size() == student_names.size())
        check_prefs(student_prefs, static_cast<int>(school_names.size()), student_names, "student",
                    "school", issues);
    if (school_prefs.size() == school_names.size())
        check_prefs(school_prefs, static_cast<int>(student_names.size()), school_names, "school",
                    "student", issues);
    if (! issues.empty())
        throw ValidationError(std::move(issues));
    return Instance(std::move(student_names), std::move(school_names), std::move(student_prefs),
                    std::move(school_prefs), std::move(capacities));
}

Example1 build_example1()
{
    Instance instance = validate_instance(
        {"A", "B", "C"}, {"1", "2"},
        {{1, 0}, {0, 1}, {0, 1}},  // A: (2,1), B: (1,2), C: (1,2)
        {{2, 0, 1}, {1, 0, 2}},    // 1: (C,A,B), 2: (B,A,C)
        {1, 1});
    Scenario scenario;
    scenario.setting = Setting::II;
    scenario.round1 = {0, 2};  // A, C
    scenario.newcomers = {1};  // B
    return {std::move(instance), std::move(scenario)};
}

Instance build_example2()
{
    return validate_instance(
        {"A", "B", "C", "D"}, {"1", "2", "3"},
        {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {1, 2, 0}},
        {{1, 0, 2, 3}, {0, 2, 1, 3}, {2, 1, 0, 3}},  // 1:(B,A,C,D) 2:(A,C,B,D) 3:(C,B,A,D)
        {1, 1, 1});
}

namespace {

// splitmix64; keeps generation independent of library distribution internals
struct Rng {
    std::uint64_t state;

    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    int below(int bound) { return bound <= 1 ? 0 : static_cast<int>(next() % bound); }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

PreferenceOrder random_order(Rng & rng, int opposite_count, double cutoff_density)
{
    PreferenceOrder order(opposite_count);
    std::iota(order.begin(), order.end(), 0);
    for (int i = opposite_count - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);
    int keep = 0;
    for (int i = 0; i < opposite_count; ++i)
        if (rng.unit() >= cutoff_density)
            ++keep;
    order.resize(keep);
    return order;
}

}  // namespace

Instance generate_random(const RandomSpec & spec)
{
    Rng rng{spec.seed * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL};
    std::vector<std::string> student_names, school_names;
    for (int s = 0; s < spec.students; ++s)
        student_names.push_back("s" + std::to_string(s));
    for (int h = 0; h < spec.schools; ++h)
        school_names.push_back("h" + std::to_string(h));
    std::vector<PreferenceOrder> student_prefs, school_prefs;
    CapacityProfile caps;
    for (int s = 0; s < spec.students; ++s)
        student_prefs.push_back(random_order(rng, spec.schools, spec.student_cutoff_density));
    for (int h = 0; h < spec.schools; ++h) {
        school_prefs.push_back(random_order(rng, spec.students, spec.school_cutoff_density));
        caps.push_back(spec.capacity_min + rng.below(spec.capacity_max - spec.capacity_min + 1));
    }
    return Instance(std::move(student_names), std::move(school_names), std::move(student_prefs),
                    std::move(school_prefs), std::move(caps));
}

}  // namespace schoolmatch
