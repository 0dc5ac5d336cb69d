#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schoolmatch/deferred_acceptance.hpp>
#include <schoolmatch/enumeration.hpp>

#include "support/oracles.hpp"

#include <algorithm>

using namespace schoolmatch;

TEST_CASE("feasible_assignments on the fixtures")
{
    auto [ex1, scenario] = build_example1();
    const auto & caps1 = ex1.capacities();

    SUBCASE("example 1: B can slip under school 1 or displace-free at school 2")
    {
        Matching me(ex1, {1, kNone, 0});
        std::vector<int> pool{0, 2};
        CHECK(feasible_assignments(ex1, me, caps1, 1, pool) == std::vector<int>{0, 1});
    }
    SUBCASE("unacceptable everywhere leaves only the empty option")
    {
        Instance lonely = ex1.with_student_prefs(1, {});
        Matching me(lonely, {1, kNone, 0});
        std::vector<int> pool{0, 2};
        CHECK(feasible_assignments(lonely, me, caps1, 1, pool) == std::vector<int>{kNone});
    }
    SUBCASE("under-filled schools stay open options and the scan continues")
    {
        Matching me(ex1);  // both schools empty
        CHECK(feasible_assignments(ex1, me, caps1, 1, {}) == std::vector<int>{0, 1, kNone});
    }
}

TEST_CASE("stream on the fixtures")
{
    auto [ex1, scenario] = build_example1();

    SUBCASE("no newcomers yields the seed once")
    {
        Matching m(ex1, {1, kNone, 0});
        ExtensionStream stream(ex1, m, ex1.capacities(), {});
        auto first = stream.next();
        REQUIRE(first.has_value());
        CHECK(*first == m);
        CHECK_FALSE(stream.next().has_value());
    }
    SUBCASE("example 1 has exactly two extensions by B")
    {
        Matching m(ex1, {1, kNone, 0});
        ExtensionStream stream(ex1, m, ex1.capacities(), {1});
        auto first = stream.next();
        auto second = stream.next();
        REQUIRE(first.has_value());
        REQUIRE(second.has_value());
        CHECK(first->school_of(1) == 0);   // most-preferred option first
        CHECK(second->school_of(1) == 1);
        CHECK_FALSE(stream.next().has_value());
    }
    SUBCASE("example 2 places D at school 3 or nowhere")
    {
        Instance ex2 = build_example2();
        Matching m(ex2, {1, 0, 2, kNone});
        ExtensionStream stream(ex2, m, ex2.capacities(), {3});
        auto first = stream.next();
        auto second = stream.next();
        REQUIRE(first.has_value());
        REQUIRE(second.has_value());
        CHECK(first->school_of(3) == 2);  // behind C, whom nobody envies
        CHECK_FALSE(second->is_matched(3));
        CHECK_FALSE(stream.next().has_value());
    }
}

TEST_CASE("stream equals brute force on a random corpus")
{
    std::int64_t worst_ratio_num = 0, worst_ratio_den = 1;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.students = 2 + static_cast<int>(seed % 4);  // n <= 5
        spec.schools = 1 + static_cast<int>(seed % 3);
        spec.capacity_max = 2;
        spec.student_cutoff_density = (seed % 3) * 0.25;
        spec.school_cutoff_density = (seed % 2) * 0.25;
        Instance instance = generate_random(spec);

        auto scenario = oracles::random_scenario(instance, seed, Setting::II, 3, 0);
        Matching m = student_optimal_da(instance, scenario.round1, instance.capacities());

        // the stream enumerates every newcomer placement the oracle finds
        std::set<std::vector<int>> streamed;
        ExtensionStream stream(instance, m, instance.capacities(), scenario.newcomers);
        int k = static_cast<int>(scenario.newcomers.size());
        int n = instance.student_count() - k;
        std::int64_t budget = static_cast<std::int64_t>(k + n) * instance.school_count();
        while (auto next = stream.next()) {
            REQUIRE_MESSAGE(streamed.insert(next->assignment()).second,
                            "duplicate yield, seed ", seed);
            if (worst_ratio_num * budget < stream.last_delay_cost() * worst_ratio_den) {
                worst_ratio_num = stream.last_delay_cost();
                worst_ratio_den = budget;
            }
            // every yield preserves the seed and is stable
            for (int s : m.matched_students())
                REQUIRE(next->school_of(s) == m.school_of(s));
            auto scope = all_students(instance);
            REQUIRE_MESSAGE(
                oracles::naive_blocking_pairs(instance, *next, instance.capacities(), scope)
                    .empty(),
                "unstable yield, seed ", seed);
        }
        auto expected = brute_force_extensions(instance, m, instance.capacities(),
                                               scenario.newcomers);
        REQUIRE_MESSAGE(streamed == expected, "seed ", seed, " got ", streamed.size(),
                        " extensions, expected ", expected.size());
    }
    MESSAGE("worst delay/(k+n)m ratio numerator=", worst_ratio_num, " denominator=",
            worst_ratio_den);
    // pinned delay constant: cost between yields stays within C*(k+n)*m
    CHECK(worst_ratio_num <= 12 * worst_ratio_den);
}

TEST_CASE("a feasible option never creates envy of a filled school")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.students = 2 + static_cast<int>(seed % 4);
        spec.schools = 1 + static_cast<int>(seed % 3);
        spec.capacity_max = 2;
        Instance instance = generate_random(spec);

        auto scenario = oracles::random_scenario(instance, seed, Setting::II, 1, 0);
        if (scenario.newcomers.empty())
            continue;
        int newcomer = scenario.newcomers.front();
        Matching m = student_optimal_da(instance, scenario.round1, instance.capacities());

        std::vector<int> pool;
        for (int s = 0; s < instance.student_count(); ++s)
            if (s != newcomer)
                pool.push_back(s);
        auto options = feasible_assignments(instance, m, instance.capacities(), newcomer, pool);
        REQUIRE(! options.empty());
        for (int h : options) {
            Matching placed = m;
            if (h != kNone)
                placed.assign(instance, newcomer, h);
            // any residual pair is an open seat awaiting later newcomers, never envy
            auto scope = all_students(instance);
            auto pairs =
                find_blocking_pairs(instance, placed, instance.capacities(), scope);
            for (const auto & p : pairs)
                REQUIRE_MESSAGE(p.kind == BlockingKind::Type2, "seed ", seed, " option ", h,
                                " student ", p.student, " school ", p.school);
        }
    }
}
