#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>

#include <functional>
#include <span>
#include <string>

namespace schoolmatch {

using TraceSink = std::function<void(const std::string &)>;

// Student-proposing deferred acceptance over `participants` under `caps`.
// Deterministic: free students are processed in ascending id.
Matching student_optimal_da(const Instance & instance, std::span<const int> participants,
                            const CapacityProfile & caps, const TraceSink & trace = {});

// Deferred acceptance restricted to residual seats: `frozen` assignments are
// never touched and proposers can only displace other proposers.
// Preconditions (violations throw std::invalid_argument): proposers are
// unmatched in `frozen`; caps cover every frozen load.
Matching resume_da(const Instance & instance, const Matching & frozen,
                   std::span<const int> proposers, const CapacityProfile & caps,
                   const TraceSink & trace = {});

}  // namespace schoolmatch
