#include <schoolmatch/mechanisms.hpp>

#include <schoolmatch/deferred_acceptance.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace schoolmatch {

namespace {

// Most stringent of several thresholds in h's order (the school-preferred one).
Threshold strictest(const Instance & instance, int h, std::initializer_list<Threshold> candidates)
{
    Threshold best;
    int best_rank = instance.school_rank(h, kNone);
    for (const Threshold & t : candidates) {
        int r = instance.school_rank(h, t.student);
        if (r < best_rank) {
            best_rank = r;
            best = t;
        }
    }
    return best;
}

// Best mutually-acceptable member of `pool` for school h; cutoff if none.
// Equivalent to bs_preferring over a pool of unmatched students.
Threshold best_unmatched_candidate(const Instance & instance, int h, std::span<const int> pool,
                                   bool require_acceptable)
{
    Threshold best;
    int best_rank = -1;
    for (int s : pool) {
        if (require_acceptable && ! instance.mutually_acceptable(s, h))
            continue;
        int r = instance.school_rank(h, s);
        if (best.is_cutoff() || r < best_rank) {
            best = Threshold{s};
            best_rank = r;
        }
    }
    return best;
}

bool passes_barrier(const Instance & instance, int s, int h, const Threshold & barrier)
{
    return instance.mutually_acceptable(s, h) && instance.before_threshold(h, s, barrier);
}

// Best school (per the student's list) where she passes the barrier; kNone if none.
int best_barrier_school(const Instance & instance, int s, const BarrierMap & barriers)
{
    for (int h : instance.student_prefs(s))
        if (passes_barrier(instance, s, h, barriers[h]))
            return h;
    return kNone;
}

std::vector<int> set_difference_sorted(std::span<const int> from, const std::set<int> & remove)
{
    std::vector<int> out;
    for (int s : from)
        if (! remove.contains(s))
            out.push_back(s);
    return out;
}

// Admit every pool member passing some barrier to her best such school.
void admit_pool(const Instance & instance, Matching & m, std::span<const int> pool,
                const BarrierMap & barriers, std::vector<int> & admitted, bool must_admit)
{
    for (int s : pool) {
        int h = best_barrier_school(instance, s, barriers);
        if (h == kNone) {
            if (must_admit)
                throw std::logic_error("forced student " + instance.student_names()[s] +
                                       " has no feasible school");
            continue;
        }
        m.assign(instance, s, h);
        admitted.push_back(s);
    }
}

void finish(const Instance & instance, ExtensionResult & result, const CapacityProfile & base_caps)
{
    result.seats_added = seats_added(instance, result.extended, base_caps);
}

}  // namespace

std::vector<int> seats_added(const Instance & instance, const Matching & m,
                             const CapacityProfile & base_caps)
{
    std::vector<int> out(instance.school_count(), 0);
    for (int h = 0; h < instance.school_count(); ++h)
        out[h] = std::max(0, m.load(h) - base_caps[h]);
    return out;
}

std::vector<int> left_over_students(const Instance & instance, const Matching & m,
                                    std::span<const int> participants)
{
    std::vector<int> out;
    for (int s : participants)
        if (! m.is_matched(s) && ! instance.student_prefs(s).empty())
            out.push_back(s);
    return out;
}

std::vector<int> schools_fbpairs(const Instance & instance, const Matching & state,
                                 const CapacityProfile & base_caps, int student)
{
    std::vector<int> out;
    for (int h = 0; h < instance.school_count(); ++h) {
        if (! instance.mutually_acceptable(student, h))
            continue;
        bool type1 = ! state.roster(h).empty() &&
            instance.before_threshold(h, student, lps_assigned(instance, state, h));
        bool type2 = state.load(h) < base_caps[h];
        if (type1 || type2)
            out.push_back(h);
    }
    return out;
}

ExtensionResult max_l(const Instance & instance, const Matching & m, std::span<const int> l,
                      const CapacityProfile & base_caps)
{
    ExtensionResult result;
    result.extended = m;
    auto pool = m.matched_students();
    result.barriers.resize(instance.school_count());
    for (int h = 0; h < instance.school_count(); ++h)
        result.barriers[h] = bs_preferring(instance, m, h, pool);
    admit_pool(instance, result.extended, l, result.barriers, result.admitted_l, false);
    finish(instance, result, base_caps);
    return result;
}

Matching max_l_capped(const Instance & instance, const Matching & m, std::span<const int> l,
                      const CapacityProfile & base_caps, int k_prime)
{
    auto full = max_l(instance, m, l, base_caps);
    int k = 0;
    for (int extra : full.seats_added)
        k += extra;
    if (k_prime < 0 || k_prime > k)
        throw std::invalid_argument("max_l_capped: seat budget out of range");
    CapacityProfile reduced = effective_capacities(full.extended, base_caps,
                                                   instance.school_count());
    int to_remove = k - k_prime;
    while (to_remove > 0) {
        for (int h = 0; h < instance.school_count() && to_remove > 0; ++h) {
            if (reduced[h] > base_caps[h]) {
                --reduced[h];
                --to_remove;
            }
        }
    }
    return resume_da(instance, m, l, reduced);
}

ExtensionResult min_n_max_l(const Instance & instance, const Matching & m, std::span<const int> n,
                            std::span<const int> l, const CapacityProfile & base_caps,
                            const MinNOptions & options)
{
    ExtensionResult result;
    result.extended = m;

    std::set<int> forced;
    for (int s : n)
        if (! schools_fbpairs(instance, m, base_caps, s).empty())
            forced.insert(s);
    std::vector<int> n_rest = set_difference_sorted(n, forced);

    auto matched_pool = m.matched_students();
    result.barriers.resize(instance.school_count());
    for (int h = 0; h < instance.school_count(); ++h) {
        Threshold barr1 = bs_preferring(instance, m, h, matched_pool);
        Threshold barr2 = options.ignore_barr2
            ? Threshold{}
            : best_unmatched_candidate(instance, h, n_rest, ! options.literal_barr2);
        result.barriers[h] = strictest(instance, h, {barr1, barr2});
    }

    std::vector<int> n_forced(forced.begin(), forced.end());
    admit_pool(instance, result.extended, n_forced, result.barriers, result.admitted_n, true);
    admit_pool(instance, result.extended, l, result.barriers, result.admitted_l, false);

    if (options.prune_unforced) {
        // Admissions triggered only by under-filled seats can become
        // unnecessary once other admissions fill those seats; release any
        // whose removal leaves no blocking pair at all.
        std::vector<int> scope = matched_pool;
        scope.insert(scope.end(), l.begin(), l.end());
        scope.insert(scope.end(), n.begin(), n.end());
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = result.admitted_n.begin(); it != result.admitted_n.end();) {
                Matching without = result.extended;
                without.unassign(*it);
                if (find_blocking_pairs(instance, without, base_caps, scope).empty()) {
                    result.extended = without;
                    it = result.admitted_n.erase(it);
                    changed = true;
                }
                else {
                    ++it;
                }
            }
        }
    }

    finish(instance, result, base_caps);
    return result;
}

ExtensionResult max_union(const Instance & instance, const Matching & m, std::span<const int> n,
                          std::span<const int> l, const CapacityProfile & base_caps)
{
    std::vector<int> pool(n.begin(), n.end());
    pool.insert(pool.end(), l.begin(), l.end());
    std::sort(pool.begin(), pool.end());
    ExtensionResult result = max_l(instance, m, pool, base_caps);
    std::set<int> n_set(n.begin(), n.end());
    std::vector<int> admitted = std::move(result.admitted_l);
    result.admitted_l.clear();
    for (int s : admitted)
        (n_set.contains(s) ? result.admitted_n : result.admitted_l).push_back(s);
    return result;
}

Setting3Round1 setting3_m1(const Instance & instance, std::span<const int> participants,
                           std::span<const int> defectors, const CapacityProfile & base_caps,
                           RepairOrder order)
{
    std::vector<int> residents(participants.begin(), participants.end());
    residents.insert(residents.end(), defectors.begin(), defectors.end());
    std::sort(residents.begin(), residents.end());

    Setting3Round1 out;
    out.matching = student_optimal_da(instance, residents, base_caps);
    for (int s : defectors)
        out.matching.unassign(s);

    // Repair type-2 exposure left by the departed defectors. Any school order
    // works; we fix one for reproducibility.
    const int limit = instance.student_count() * instance.school_count();
    for (;;) {
        int school = kNone;
        Threshold pick;
        auto consider = [&](int h) {
            if (out.matching.load(h) >= base_caps[h])
                return;
            Threshold best;
            int best_rank = -1;
            for (int s : participants) {
                if (! instance.mutually_acceptable(s, h))
                    continue;
                if (! instance.student_prefers(s, h, out.matching.school_of(s)))
                    continue;
                int r = instance.school_rank(h, s);
                if (best.is_cutoff() || r < best_rank) {
                    best = Threshold{s};
                    best_rank = r;
                }
            }
            if (! best.is_cutoff()) {
                school = h;
                pick = best;
            }
        };
        if (order == RepairOrder::LowestSchool) {
            for (int h = 0; h < instance.school_count() && school == kNone; ++h)
                consider(h);
        }
        else {
            for (int h = instance.school_count() - 1; h >= 0 && school == kNone; --h)
                consider(h);
        }
        if (school == kNone)
            break;
        out.matching.assign(instance, pick.student, school);
        if (++out.reassignments > limit)
            throw std::logic_error("setting3_m1: repair loop exceeded the n*m bound");
    }
    return out;
}

ExtensionResult setting3_m2(const Instance & instance, const Matching & m,
                            std::span<const int> s2, std::span<const int> n,
                            std::span<const int> l, const CapacityProfile & base_caps)
{
    ExtensionResult result;
    result.extended = m;

    // Defectors first: each one forced by a blocking pair is assigned her
    // best school among those pairs, not the barrier-best one.
    std::vector<std::pair<int, int>> s2_placements;
    for (int s : s2) {
        auto fb = schools_fbpairs(instance, m, base_caps, s);
        if (fb.empty())
            continue;
        int best = fb.front();
        for (int h : fb)
            if (instance.student_prefers(s, h, best))
                best = h;
        s2_placements.emplace_back(s, best);
    }
    for (auto [s, h] : s2_placements) {
        result.extended.assign(instance, s, h);
        result.admitted_s2.push_back(s);
    }
    std::set<int> s2_admitted(result.admitted_s2.begin(), result.admitted_s2.end());

    std::set<int> forced;
    for (int s : n)
        if (! schools_fbpairs(instance, result.extended, base_caps, s).empty())
            forced.insert(s);
    std::vector<int> n_rest = set_difference_sorted(n, forced);
    std::vector<int> s2_rest = set_difference_sorted(s2, s2_admitted);

    auto matched_pool = m.matched_students();
    std::vector<int> barr2_pool = n_rest;
    barr2_pool.insert(barr2_pool.end(), s2_rest.begin(), s2_rest.end());
    std::vector<int> s2_pool(s2.begin(), s2.end());

    result.barriers.resize(instance.school_count());
    for (int h = 0; h < instance.school_count(); ++h) {
        Threshold barr1 = bs_preferring(instance, result.extended, h, matched_pool);
        Threshold barr2 = best_unmatched_candidate(instance, h, barr2_pool, true);
        Threshold barr3 = bs_preferring(instance, result.extended, h, s2_pool);
        result.barriers[h] = strictest(instance, h, {barr1, barr2, barr3});
    }

    std::vector<int> n_forced(forced.begin(), forced.end());
    admit_pool(instance, result.extended, n_forced, result.barriers, result.admitted_n, true);
    admit_pool(instance, result.extended, l, result.barriers, result.admitted_l, false);

    finish(instance, result, base_caps);
    return result;
}

}  // namespace schoolmatch
