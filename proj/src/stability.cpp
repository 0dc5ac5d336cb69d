#include <schoolmatch/stability.hpp>

#include <algorithm>
#include <tuple>

namespace schoolmatch {

std::vector<int> all_students(const Instance & instance)
{
    std::vector<int> out(instance.student_count());
    for (int s = 0; s < instance.student_count(); ++s)
        out[s] = s;
    return out;
}

Threshold lps_assigned(const Instance & instance, const Matching & m, int h)
{
    Threshold worst;
    int worst_rank = -1;
    for (int s : m.roster(h)) {
        int r = instance.school_rank(h, s);
        if (r > worst_rank) {
            worst_rank = r;
            worst = Threshold{s};
        }
    }
    return worst;
}

std::vector<int> preferred_schools(const Instance & instance, const Matching & m, int s)
{
    std::vector<int> out;
    for (int h : instance.student_prefs(s)) {
        if (h == m.school_of(s))
            break;
        out.push_back(h);
    }
    return out;
}

Threshold bs_preferring(const Instance & instance, const Matching & m, int h,
                        std::span<const int> pool)
{
    Threshold best;
    int best_rank = -1;
    for (int s : pool) {
        if (! instance.student_prefers(s, h, m.school_of(s)))
            continue;
        int r = instance.school_rank(h, s);
        if (best.is_cutoff() || r < best_rank) {
            best = Threshold{s};
            best_rank = r;
        }
    }
    return best;
}

std::vector<BlockingPair> find_blocking_pairs(const Instance & instance, const Matching & m,
                                              const CapacityProfile & base_caps,
                                              std::span<const int> scope)
{
    std::vector<BlockingPair> pairs;
    for (int s : scope) {
        for (int h : instance.student_prefs(s)) {
            if (h == m.school_of(s))
                break;  // schools after her assignment cannot be preferred
            bool type1 = ! m.roster(h).empty() &&
                instance.before_threshold(h, s, lps_assigned(instance, m, h));
            bool type2 = m.load(h) < base_caps[h] && instance.school_acceptable(h, s);
            if (type1)
                pairs.push_back({s, h, BlockingKind::Type1});
            else if (type2)
                pairs.push_back({s, h, BlockingKind::Type2});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const BlockingPair & a, const BlockingPair & b) {
        return std::tie(a.student, a.school) < std::tie(b.student, b.school);
    });
    return pairs;
}

std::vector<BlockingPair> find_blocking_pairs(const Instance & instance, const Matching & m,
                                              const CapacityProfile & base_caps)
{
    auto scope = all_students(instance);
    return find_blocking_pairs(instance, m, base_caps, scope);
}

bool is_stable(const Instance & instance, const Matching & m, const CapacityProfile & base_caps,
               std::span<const int> scope)
{
    return find_blocking_pairs(instance, m, base_caps, scope).empty();
}

bool is_stable(const Instance & instance, const Matching & m, const CapacityProfile & base_caps)
{
    return find_blocking_pairs(instance, m, base_caps).empty();
}

CapacityProfile effective_capacities(const Matching & m, const CapacityProfile & base_caps,
                                     int school_count)
{
    CapacityProfile out(school_count);
    for (int h = 0; h < school_count; ++h)
        out[h] = std::max(m.load(h), base_caps[h]);
    return out;
}

}  // namespace schoolmatch
