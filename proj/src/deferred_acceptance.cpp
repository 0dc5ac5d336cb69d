#include <schoolmatch/deferred_acceptance.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace schoolmatch {

namespace {

// Shared proposal loop. `held` starts from the proposers' side only; frozen
// rosters (if any) are accounted for through `slots`.
Matching propose(const Instance & instance, Matching m, std::span<const int> proposers,
                 const std::vector<int> & slots, const TraceSink & trace)
{
    const int n = instance.student_count();
    std::vector<int> next_choice(n, 0);
    std::vector<std::vector<int>> held(instance.school_count());
    // ascending ids; std::set keeps the "lowest free student" rule cheap
    std::set<int> free(proposers.begin(), proposers.end());

    auto emit = [&](const std::string & line) {
        if (trace)
            trace(line);
    };

    while (! free.empty()) {
        int s = *free.begin();
        const auto & prefs = instance.student_prefs(s);
        if (next_choice[s] >= static_cast<int>(prefs.size())) {
            free.erase(free.begin());
            continue;
        }
        int h = prefs[next_choice[s]++];
        emit("propose " + instance.student_names()[s] + " -> " + instance.school_names()[h]);
        if (! instance.school_acceptable(h, s)) {
            emit("reject " + instance.student_names()[s] + " at " + instance.school_names()[h]);
            continue;
        }
        auto & holding = held[h];
        if (static_cast<int>(holding.size()) < slots[h]) {
            holding.push_back(s);
            free.erase(free.begin());
            continue;
        }
        if (slots[h] == 0) {
            emit("reject " + instance.student_names()[s] + " at " + instance.school_names()[h]);
            continue;
        }
        auto worst = std::max_element(holding.begin(), holding.end(), [&](int a, int b) {
            return instance.school_rank(h, a) < instance.school_rank(h, b);
        });
        if (instance.school_prefers(h, s, *worst)) {
            emit("reject " + instance.student_names()[*worst] + " at " +
                 instance.school_names()[h]);
            free.insert(*worst);
            *worst = s;
            free.erase(s);
        }
        else {
            emit("reject " + instance.student_names()[s] + " at " + instance.school_names()[h]);
        }
    }

    for (int h = 0; h < instance.school_count(); ++h)
        for (int s : held[h])
            m.assign(instance, s, h);
    return m;
}

}  // namespace

Matching student_optimal_da(const Instance & instance, std::span<const int> participants,
                            const CapacityProfile & caps, const TraceSink & trace)
{
    std::vector<int> slots(caps.begin(), caps.end());
    return propose(instance, Matching(instance), participants, slots, trace);
}

Matching resume_da(const Instance & instance, const Matching & frozen,
                   std::span<const int> proposers, const CapacityProfile & caps,
                   const TraceSink & trace)
{
    for (int s : proposers)
        if (frozen.is_matched(s))
            throw std::invalid_argument("resume_da: proposer " + instance.student_names()[s] +
                                        " is already matched");
    std::vector<int> slots(instance.school_count());
    for (int h = 0; h < instance.school_count(); ++h) {
        if (caps[h] < frozen.load(h))
            throw std::invalid_argument("resume_da: capacity of " + instance.school_names()[h] +
                                        " is below its frozen load");
        slots[h] = caps[h] - frozen.load(h);
    }
    return propose(instance, frozen, proposers, slots, trace);
}

}  // namespace schoolmatch
