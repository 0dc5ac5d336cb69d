#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>
#include <schoolmatch/stability.hpp>

#include <span>
#include <vector>

namespace schoolmatch {

using BarrierMap = std::vector<Threshold>;  // indexed by school

struct ExtensionResult {
    Matching extended;
    std::vector<int> admitted_n;   // N'
    std::vector<int> admitted_s2;  // S2'
    std::vector<int> admitted_l;   // L'
    BarrierMap barriers;
    std::vector<int> seats_added;  // per school, max(0, load - base capacity)
};

// Schools that would form a blocking pair with `student` if she stayed
// unmatched in `state`.
std::vector<int> schools_fbpairs(const Instance & instance, const Matching & state,
                                 const CapacityProfile & base_caps, int student);

// Round-2 mechanism for Setting I: admit the largest stability-preserving
// subset of the left-over students L.
ExtensionResult max_l(const Instance & instance, const Matching & m, std::span<const int> l,
                      const CapacityProfile & base_caps);

// Capped variant: expand only k_prime seats (removed in ascending school id)
// and fill them by resuming deferred acceptance with L proposing.
Matching max_l_capped(const Instance & instance, const Matching & m, std::span<const int> l,
                      const CapacityProfile & base_caps, int k_prime);

struct MinNOptions {
    // Take the second barrier over (N - N') literally, ignoring mutual
    // acceptability (study knob; default follows the blocking-pair definition).
    bool literal_barr2 = false;
    // Drop the second barrier entirely. Deliberately broken; audit tests use
    // it as a negative control.
    bool ignore_barr2 = false;
    // After assignment, release admitted N-students whose removal leaves the
    // matching stable, so that every remaining admission is forced.
    bool prune_unforced = true;
};

// Round-2 mechanism for Setting II: admit the smallest forced subset of N,
// then the largest subset of L.
ExtensionResult min_n_max_l(const Instance & instance, const Matching & m, std::span<const int> n,
                            std::span<const int> l, const CapacityProfile & base_caps,
                            const MinNOptions & options = {});

// Round-2 mechanism for Max over N union L (also solves the lexicographic
// Max_N Max_L / Max_L Max_N variants).
ExtensionResult max_union(const Instance & instance, const Matching & m, std::span<const int> n,
                          std::span<const int> l, const CapacityProfile & base_caps);

enum class RepairOrder { LowestSchool, HighestSchool };

struct Setting3Round1 {
    Matching matching;
    int reassignments = 0;
};

// Round-1 mechanism for Setting III: student-optimal matching over all
// residents, defectors removed, then type-2 repairs until stable.
Setting3Round1 setting3_m1(const Instance & instance, std::span<const int> participants,
                           std::span<const int> defectors, const CapacityProfile & base_caps,
                           RepairOrder order = RepairOrder::LowestSchool);

// Round-2 mechanism for Setting III.
ExtensionResult setting3_m2(const Instance & instance, const Matching & m,
                            std::span<const int> s2, std::span<const int> n,
                            std::span<const int> l, const CapacityProfile & base_caps);

// Left-over students: participants unmatched by `m` that find some school
// acceptable.
std::vector<int> left_over_students(const Instance & instance, const Matching & m,
                                    std::span<const int> participants);

std::vector<int> seats_added(const Instance & instance, const Matching & m,
                             const CapacityProfile & base_caps);

}  // namespace schoolmatch
