#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>

#include <span>
#include <vector>

namespace schoolmatch {

enum class BlockingKind { Type1, Type2 };

struct BlockingPair {
    int student;
    int school;
    BlockingKind kind;

    friend bool operator==(const BlockingPair &, const BlockingPair &) = default;
};

// Least preferred student assigned to h; cutoff for an empty roster.
Threshold lps_assigned(const Instance & instance, const Matching & m, int h);

// Schools the student ranks strictly above her current assignment
// (everything acceptable, when unassigned). In list order.
std::vector<int> preferred_schools(const Instance & instance, const Matching & m, int s);

// School-most-preferred member of `pool` for whom h is a preferred school;
// cutoff if none prefers h.
Threshold bs_preferring(const Instance & instance, const Matching & m, int h,
                        std::span<const int> pool);

// All blocking pairs among `scope` students, sorted by (student, school).
// "Under-filled" is judged against base capacities; loads above base are
// legal expanded seats and close type-2 exposure.
std::vector<BlockingPair> find_blocking_pairs(const Instance & instance, const Matching & m,
                                              const CapacityProfile & base_caps,
                                              std::span<const int> scope);
std::vector<BlockingPair> find_blocking_pairs(const Instance & instance, const Matching & m,
                                              const CapacityProfile & base_caps);

bool is_stable(const Instance & instance, const Matching & m, const CapacityProfile & base_caps,
               std::span<const int> scope);
bool is_stable(const Instance & instance, const Matching & m, const CapacityProfile & base_caps);

// Per school, max(load, base capacity).
CapacityProfile effective_capacities(const Matching & m, const CapacityProfile & base_caps,
                                     int school_count);

std::vector<int> all_students(const Instance & instance);

}  // namespace schoolmatch
