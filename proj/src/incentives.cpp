#include <schoolmatch/incentives.hpp>

#include <schoolmatch/deferred_acceptance.hpp>
#include <schoolmatch/enumeration.hpp>
#include <schoolmatch/stability.hpp>

#include <algorithm>
#include <set>

namespace schoolmatch {

namespace {

bool contains(std::span<const int> xs, int x)
{
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

AuditVerdict found(int student, std::optional<PreferenceOrder> misreport, bool late, int truthful,
                   int deviant)
{
    AuditVerdict v;
    v.clean = false;
    v.witness = AuditWitness{Deviation{student, std::move(misreport), late}, truthful, deviant};
    return v;
}

// Round-1 misreport sweep: rerun the round-1 mechanism under each report,
// judging gains with the student's true list.
AuditVerdict audit_round1(const Instance & truth, const Instance & profile,
                          const Scenario & scenario, int student,
                          const std::vector<PreferenceOrder> & reports)
{
    if (! contains(scenario.round1, student))
        return {};
    int truthful = run_round1(profile, scenario).school_of(student);
    for (const auto & r : reports) {
        Instance deviant = profile.with_student_prefs(student, r);
        int got = run_round1(deviant, scenario).school_of(student);
        if (truth.student_prefers(student, got, truthful))
            return found(student, r, false, truthful, got);
    }
    return {};
}

// Round-2 misreport sweep with the truthful round-1 matching held fixed.
AuditVerdict audit_round2(const Instance & truth, const Instance & profile,
                          const Scenario & scenario, int student,
                          const std::vector<PreferenceOrder> & reports)
{
    Matching m = run_round1(profile, scenario);
    bool in_round2 = contains(scenario.newcomers, student) ||
        contains(scenario.defectors, student) ||
        contains(left_over_students(profile, m, scenario.round1), student);
    if (! in_round2)
        return {};
    int truthful = run_round2(profile, scenario, m).extended.school_of(student);
    for (const auto & r : reports) {
        Instance deviant = profile.with_student_prefs(student, r);
        int got = run_round2(deviant, scenario, m).extended.school_of(student);
        if (truth.student_prefers(student, got, truthful))
            return found(student, r, false, truthful, got);
    }
    return {};
}

AuditVerdict audit_profile(const Instance & truth, const Instance & profile,
                           const Scenario & scenario, int student,
                           const std::vector<PreferenceOrder> & reports)
{
    if (AuditVerdict v = audit_round1(truth, profile, scenario, student, reports); ! v.clean)
        return v;
    return audit_round2(truth, profile, scenario, student, reports);
}

std::string format_matching(const Instance & instance, const Matching & m)
{
    std::string out;
    for (int h = 0; h < instance.school_count(); ++h) {
        auto roster = m.roster(h);
        std::sort(roster.begin(), roster.end());
        for (int s : roster) {
            if (! out.empty())
                out += ", ";
            out += instance.school_names()[h] + instance.student_names()[s];
        }
    }
    return out.empty() ? "(empty)" : out;
}

void expect(ReplicationReport & report, std::string label, std::string expected,
            std::string actual)
{
    bool ok = expected == actual;
    report.checks.push_back({std::move(label), std::move(expected), std::move(actual), ok});
}

// Every matching of `participants` that is stable with respect to them.
std::set<std::vector<int>> all_stable_matchings(const Instance & instance,
                                                std::span<const int> participants,
                                                const CapacityProfile & caps)
{
    std::vector<std::vector<int>> choices;
    for (int s : participants) {
        std::vector<int> c{kNone};
        for (int h : instance.student_prefs(s))
            if (instance.school_acceptable(h, s))
                c.push_back(h);
        choices.push_back(std::move(c));
    }
    std::set<std::vector<int>> out;
    std::vector<std::size_t> odometer(participants.size(), 0);
    for (;;) {
        Matching m(instance);
        bool overfull = false;
        for (std::size_t i = 0; i < participants.size(); ++i)
            if (int h = choices[i][odometer[i]]; h != kNone) {
                m.assign(instance, participants[i], h);
                overfull |= m.load(h) > caps[h];
            }
        if (! overfull && is_stable(instance, m, caps, participants))
            out.insert(m.assignment());
        std::size_t i = 0;
        while (i < odometer.size() && ++odometer[i] == choices[i].size())
            odometer[i++] = 0;
        if (i == odometer.size())
            break;
    }
    return out;
}

}  // namespace

std::vector<PreferenceOrder> enumerate_reports(int schools)
{
    std::vector<PreferenceOrder> out;
    PreferenceOrder current;
    std::vector<bool> used(schools, false);
    auto rec = [&](auto && self) -> void {
        out.push_back(current);
        for (int h = 0; h < schools; ++h) {
            if (used[h])
                continue;
            used[h] = true;
            current.push_back(h);
            self(self);
            current.pop_back();
            used[h] = false;
        }
    };
    rec(rec);
    return out;
}

AuditVerdict audit_dsic(Setting setting, const Instance & instance, const Scenario & scenario,
                        int student, const AuditOptions & options)
{
    Scenario scoped = scenario;
    scoped.setting = setting;
    auto reports = enumerate_reports(instance.school_count());
    if (AuditVerdict v = audit_profile(instance, instance, scoped, student, reports); ! v.clean)
        return v;
    if (! options.adversarial)
        return {};
    for (int other = 0; other < instance.student_count(); ++other) {
        if (other == student)
            continue;
        for (const auto & r : reports) {
            Instance profile = instance.with_student_prefs(other, r);
            if (AuditVerdict v = audit_profile(instance, profile, scoped, student, reports);
                ! v.clean)
                return v;
        }
    }
    return {};
}

AuditVerdict audit_icne_setting3(const Instance & instance, const Scenario & scenario, int student)
{
    Scenario scoped = scenario;
    scoped.setting = Setting::III;
    auto reports = enumerate_reports(instance.school_count());
    if (AuditVerdict v = audit_profile(instance, instance, scoped, student, reports); ! v.clean)
        return v;

    if (! contains(scoped.round1, student))
        return {};
    // Timing deviation: arrive late (with any report), all others unchanged.
    int truthful = run_both_rounds(instance, scoped).round2.extended.school_of(student);
    Scenario late = scoped;
    std::erase(late.round1, student);
    late.defectors.push_back(student);
    std::sort(late.defectors.begin(), late.defectors.end());
    for (const auto & r : reports) {
        Instance deviant = instance.with_student_prefs(student, r);
        int got = run_both_rounds(deviant, late).round2.extended.school_of(student);
        if (instance.student_prefers(student, got, truthful))
            return found(student, r, true, truthful, got);
    }
    return {};
}

bool ReplicationReport::all_ok() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const ReplicationCheck & c) { return c.ok; });
}

ReplicationReport replicate_impossibility1()
{
    ReplicationReport report;
    Instance instance = build_example2();
    const auto & caps = instance.capacities();
    const int a = 0, b = 1, c = 2, d = 3;

    auto m_i1 = setting3_m1(instance, std::vector<int>{a, b, c, d}, {}, caps).matching;
    expect(report, "I1: round-1 matching", "1B, 2A, 3C", format_matching(instance, m_i1));

    std::vector<int> s1_i2{a, b, d};
    std::vector<int> s2_i2{c};
    auto m_i2 = setting3_m1(instance, s1_i2, s2_i2, caps).matching;
    expect(report, "I2: round-1 matching", "1B, 2A, 3D", format_matching(instance, m_i2));
    auto l_i2 = left_over_students(instance, m_i2, s1_i2);
    auto e_i2 = setting3_m2(instance, m_i2, s2_i2, {}, l_i2, caps);
    expect(report, "I2: C's school after round 2", "3",
           instance.school_names()[e_i2.extended.school_of(c)]);

    std::vector<int> s1_i3{a, d};
    std::vector<int> s2_i3{b, c};
    auto m_i3 = setting3_m1(instance, s1_i3, s2_i3, caps).matching;
    expect(report, "I3: round-1 matching", "1A, 2D", format_matching(instance, m_i3));
    auto l_i3 = left_over_students(instance, m_i3, s1_i3);
    auto e_i3 = setting3_m2(instance, m_i3, s2_i3, {}, l_i3, caps);
    expect(report, "I3: B's school after round 2", "2",
           instance.school_names()[e_i3.extended.school_of(b)]);
    expect(report, "I3: C's school after round 2", "2",
           instance.school_names()[e_i3.extended.school_of(c)]);
    expect(report, "B gains from the joint deviation", "true",
           instance.student_prefers(b, e_i3.extended.school_of(b), m_i2.school_of(b)) ? "true"
                                                                                      : "false");
    return report;
}

ReplicationReport replicate_impossibility2()
{
    ReplicationReport report;
    Instance full = build_example2();
    const auto & caps = full.capacities();
    const int a = 0, b = 1, c = 2, d = 3;

    auto stable_i1 = all_stable_matchings(full, std::vector<int>{a, b, c, d}, caps);
    expect(report, "I1: count of stable matchings", "1", std::to_string(stable_i1.size()));
    Matching m_i1(full, *stable_i1.begin());
    expect(report, "I1: the stable matching", "1B, 2A, 3C", format_matching(full, m_i1));

    // I2: an oblivious round-1 mechanism sees only {A, B, D}; it has exactly
    // two stable matchings to choose from.
    std::vector<int> visible{a, b, d};
    auto stable_i2 = all_stable_matchings(full, visible, caps);
    expect(report, "I2: count of stable matchings", "2", std::to_string(stable_i2.size()));
    Matching first(full), second(full);
    if (stable_i2.size() == 2) {
        auto it = stable_i2.begin();
        first = Matching(full, *it++);
        second = Matching(full, *it);
    }
    expect(report, "I2: choice one", "1A, 2B, 3D", format_matching(full, first));
    expect(report, "I2: choice two", "1B, 2A, 3D", format_matching(full, second));

    // Branch one: (1A, 2B, 3D) chosen, C arrives late. Every stable extension
    // sends C to school 2, which she prefers to her on-time school 3.
    auto extensions = brute_force_extensions(full, first, caps, std::vector<int>{c});
    bool c_forced = ! extensions.empty();
    for (const auto & assignment : extensions)
        c_forced = c_forced && assignment[c] == 1;
    expect(report, "branch one: C is forced to school 2", "true", c_forced ? "true" : "false");
    expect(report, "branch one: C gains by arriving late", "true",
           full.student_prefers(c, 1, m_i1.school_of(c)) ? "true" : "false");

    // Branch two: (1B, 2A, 3D) chosen. I3 shows the same lists, so the
    // oblivious mechanism repeats that choice, putting B at school 1. In I4
    // (B arrives late) the visible instance has a unique stable matching.
    Instance trimmed = validate_instance(
        {"A", "B", "D"}, {"1", "2", "3"},
        {{0, 1, 2}, {1, 0, 2}, {1, 2, 0}},
        {{1, 0, 2}, {0, 1, 2}, {1, 0, 2}},
        {1, 1, 1});
    int tb = 1;
    auto stable_i4 = all_stable_matchings(trimmed, std::vector<int>{0, 2}, caps);
    expect(report, "I4: count of stable matchings", "1", std::to_string(stable_i4.size()));
    Matching m_i4(trimmed, *stable_i4.begin());
    expect(report, "I4: the stable matching", "1A, 2D", format_matching(trimmed, m_i4));
    auto ext_i4 = brute_force_extensions(trimmed, m_i4, caps, std::vector<int>{tb});
    bool b_forced = ! ext_i4.empty();
    for (const auto & assignment : ext_i4)
        b_forced = b_forced && assignment[tb] == 1;
    expect(report, "branch two: B is forced to school 2", "true", b_forced ? "true" : "false");
    expect(report, "branch two: B gains by arriving late", "true",
           trimmed.student_prefers(tb, 1, 0) ? "true" : "false");
    return report;
}

}  // namespace schoolmatch
