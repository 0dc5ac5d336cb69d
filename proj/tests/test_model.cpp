#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>

#include <set>

using namespace schoolmatch;

TEST_CASE("example 1 fixture shape")
{
    auto [instance, scenario] = build_example1();
    REQUIRE(instance.student_count() == 3);
    REQUIRE(instance.school_count() == 2);
    CHECK(instance.student_names() == std::vector<std::string>{"A", "B", "C"});
    CHECK(instance.school_names() == std::vector<std::string>{"1", "2"});
    CHECK(instance.capacities() == CapacityProfile{1, 1});

    int a = instance.student_index("A");
    int b = instance.student_index("B");
    int c = instance.student_index("C");
    int h1 = instance.school_index("1");
    int h2 = instance.school_index("2");

    CHECK(instance.student_prefs(a) == PreferenceOrder{h2, h1});
    CHECK(instance.student_prefs(b) == PreferenceOrder{h1, h2});
    CHECK(instance.school_prefs(h1) == PreferenceOrder{c, a, b});
    CHECK(instance.school_prefs(h2) == PreferenceOrder{b, a, c});

    CHECK(scenario.setting == Setting::II);
    CHECK(scenario.round1 == std::vector<int>{a, c});
    CHECK(scenario.newcomers == std::vector<int>{b});
    CHECK(scenario.defectors.empty());
}

TEST_CASE("example 2 fixture shape")
{
    Instance instance = build_example2();
    REQUIRE(instance.student_count() == 4);
    REQUIRE(instance.school_count() == 3);
    int d = instance.student_index("D");
    // D ranks last everywhere
    for (int h = 0; h < 3; ++h)
        CHECK(instance.school_rank(h, d) == 3);
}

TEST_CASE("rank tables and thresholds")
{
    auto [instance, scenario] = build_example1();
    int a = 0, b = 1, c = 2, h1 = 0, h2 = 1;

    CHECK(instance.student_rank(a, h2) == 0);
    CHECK(instance.student_rank(a, h1) == 1);
    CHECK(instance.student_rank(a, kNone) == 2);  // the cutoff closes the prefix
    CHECK(instance.school_rank(h1, c) == 0);
    CHECK(instance.school_rank(h2, kNone) == 3);

    CHECK(instance.student_prefers(b, h1, h2));
    CHECK(instance.student_prefers(b, h2, kNone));
    CHECK_FALSE(instance.student_prefers(b, kNone, h2));

    CHECK(instance.before_threshold(h1, a, Threshold{b}));
    CHECK_FALSE(instance.before_threshold(h1, b, Threshold{a}));
    CHECK(instance.before_threshold(h1, b, Threshold{}));  // everyone listed beats the cutoff
    CHECK(instance.mutually_acceptable(a, h1));

    SUBCASE("unlisted pairs rank below the cutoff")
    {
        Instance trimmed = instance.with_student_prefs(a, {h2});
        CHECK(trimmed.student_rank(a, h1) > trimmed.student_rank(a, kNone));
        CHECK_FALSE(trimmed.student_acceptable(a, h1));
        CHECK_FALSE(trimmed.mutually_acceptable(a, h1));
        // the original is untouched
        CHECK(instance.student_acceptable(a, h1));
    }
}

TEST_CASE("validation collects every issue")
{
    SUBCASE("clean instance passes")
    {
        CHECK_NOTHROW(validate_instance({"x", "y"}, {"h"}, {{0}, {}}, {{1, 0}}, {2}));
    }
    SUBCASE("several violations at once")
    {
        try {
            validate_instance({"x", "x"}, {"h"}, {{0, 0}, {5}}, {{0}}, {-1});
            FAIL("expected ValidationError");
        }
        catch (const ValidationError & e) {
            CHECK(e.issues.size() >= 4);  // dup name, dup pref, bad id, negative capacity
        }
    }
    SUBCASE("size mismatch")
    {
        CHECK_THROWS_AS(validate_instance({"x"}, {"h"}, {}, {{0}}, {1}), ValidationError);
    }
}

TEST_CASE("matching assign and unassign keep rosters consistent")
{
    auto [instance, scenario] = build_example1();
    Matching m(instance);
    int a = 0, b = 1, h1 = 0, h2 = 1;

    m.assign(instance, a, h2);
    m.assign(instance, b, h2);
    CHECK(m.load(h2) == 2);
    CHECK(m.roster(h2) == std::vector<int>{a, b});
    CHECK(m.school_of(a) == h2);
    CHECK(m.matched_students() == std::vector<int>{a, b});

    m.assign(instance, b, h1);  // moving vacates the old seat
    CHECK(m.roster(h2) == std::vector<int>{a});
    CHECK(m.school_of(b) == h1);

    m.unassign(b);
    CHECK_FALSE(m.is_matched(b));
    CHECK(m.load(h1) == 0);
    m.unassign(b);  // idempotent
    CHECK_FALSE(m.is_matched(b));
}

TEST_CASE("matching rejects non-mutually-acceptable pairs")
{
    auto [instance, scenario] = build_example1();
    Instance trimmed = instance.with_student_prefs(0, {1});
    Matching m(trimmed);
    CHECK_THROWS_AS(m.assign(trimmed, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Matching(trimmed, std::vector<int>{0, kNone, kNone}), std::invalid_argument);
    CHECK_THROWS_AS(Matching(trimmed, std::vector<int>{9, kNone, kNone}), std::invalid_argument);
}

TEST_CASE("matching equality ignores roster order")
{
    auto [instance, scenario] = build_example1();
    Matching x(instance), y(instance);
    x.assign(instance, 0, 1);
    x.assign(instance, 1, 1);
    y.assign(instance, 1, 1);
    y.assign(instance, 0, 1);
    CHECK(x == y);
    y.unassign(1);
    CHECK_FALSE(x == y);
}

TEST_CASE("random generation is deterministic and well-formed")
{
    RandomSpec spec;
    spec.seed = 42;
    spec.students = 7;
    spec.schools = 4;
    spec.capacity_min = 1;
    spec.capacity_max = 3;
    spec.student_cutoff_density = 0.3;
    spec.school_cutoff_density = 0.3;

    Instance one = generate_random(spec);
    Instance two = generate_random(spec);
    CHECK(one == two);

    spec.seed = 43;
    Instance other = generate_random(spec);
    CHECK_FALSE(one == other);

    for (int h = 0; h < one.school_count(); ++h) {
        CHECK(one.capacity(h) >= 1);
        CHECK(one.capacity(h) <= 3);
        std::set<int> seen(one.school_prefs(h).begin(), one.school_prefs(h).end());
        CHECK(seen.size() == one.school_prefs(h).size());
        for (int s : one.school_prefs(h)) {
            CHECK(s >= 0);
            CHECK(s < one.student_count());
        }
    }

    SUBCASE("zero density means complete lists")
    {
        spec.student_cutoff_density = 0.0;
        spec.school_cutoff_density = 0.0;
        Instance full = generate_random(spec);
        for (int s = 0; s < full.student_count(); ++s)
            CHECK(full.student_prefs(s).size() == static_cast<std::size_t>(full.school_count()));
        for (int h = 0; h < full.school_count(); ++h)
            CHECK(full.school_prefs(h).size() == static_cast<std::size_t>(full.student_count()));
    }
}
