#include <schoolmatch/pipeline.hpp>

namespace schoolmatch {

Matching run_round1(const Instance & instance, const Scenario & scenario, const TraceSink & trace)
{
    if (scenario.setting == Setting::III)
        return setting3_m1(instance, scenario.round1, scenario.defectors, instance.capacities())
            .matching;
    return student_optimal_da(instance, scenario.round1, instance.capacities(), trace);
}

ExtensionResult run_round2(const Instance & instance, const Scenario & scenario,
                           const Matching & m, const PipelineOptions & options)
{
    const auto & caps = instance.capacities();
    auto l = left_over_students(instance, m, scenario.round1);

    if (scenario.setting == Setting::III)
        return setting3_m2(instance, m, scenario.defectors, scenario.newcomers, l, caps);

    if (scenario.setting == Setting::II) {
        switch (options.objective) {
            case Round2Objective::MaxL:
                return max_l(instance, m, l, caps);
            case Round2Objective::MaxUnion:
                return max_union(instance, m, scenario.newcomers, l, caps);
            case Round2Objective::MinNMaxL:
                break;
        }
        return min_n_max_l(instance, m, scenario.newcomers, l, caps);
    }

    if (options.cap.has_value()) {
        ExtensionResult result;
        result.extended = max_l_capped(instance, m, l, caps, *options.cap);
        for (int s : l)
            if (result.extended.is_matched(s))
                result.admitted_l.push_back(s);
        result.barriers.assign(instance.school_count(), Threshold{});
        result.seats_added = seats_added(instance, result.extended, caps);
        return result;
    }
    return max_l(instance, m, l, caps);
}

PipelineResult run_both_rounds(const Instance & instance, const Scenario & scenario,
                               const PipelineOptions & options)
{
    PipelineResult out;
    if (scenario.setting == Setting::III) {
        auto round1 = setting3_m1(instance, scenario.round1, scenario.defectors,
                                  instance.capacities());
        out.round1 = std::move(round1.matching);
        out.m1_reassignments = round1.reassignments;
    }
    else {
        out.round1 = run_round1(instance, scenario, options.trace);
    }
    out.left_over = left_over_students(instance, out.round1, scenario.round1);
    out.round2 = run_round2(instance, scenario, out.round1, options);
    return out;
}

}  // namespace schoolmatch
