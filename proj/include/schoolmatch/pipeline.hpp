#pragma once

#include <schoolmatch/deferred_acceptance.hpp>
#include <schoolmatch/instance.hpp>
#include <schoolmatch/mechanisms.hpp>

#include <optional>

namespace schoolmatch {

enum class Round2Objective { MaxL, MinNMaxL, MaxUnion };

struct PipelineOptions {
    Round2Objective objective = Round2Objective::MinNMaxL;  // Setting II only
    std::optional<int> cap = std::nullopt;                  // Setting I: k' seats
    TraceSink trace = {};
};

struct PipelineResult {
    Matching round1;
    ExtensionResult round2;
    std::vector<int> left_over;
    int m1_reassignments = 0;  // Setting III only
};

// Round 1 for the scenario's setting (deferred acceptance, or the Setting-III
// repair mechanism over all residents).
Matching run_round1(const Instance & instance, const Scenario & scenario,
                    const TraceSink & trace = {});

// Round 2 extending `m`.
ExtensionResult run_round2(const Instance & instance, const Scenario & scenario,
                           const Matching & m, const PipelineOptions & options = {});

PipelineResult run_both_rounds(const Instance & instance, const Scenario & scenario,
                               const PipelineOptions & options = {});

}  // namespace schoolmatch
