#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/pipeline.hpp>

#include <optional>
#include <string>
#include <vector>

namespace schoolmatch {

struct Deviation {
    int student = kNone;
    std::optional<PreferenceOrder> misreport;  // nullopt = true list
    bool late_arrival = false;                 // Setting III residents only
};

struct AuditWitness {
    Deviation deviation;
    int truthful_school = kNone;
    int deviant_school = kNone;
};

struct AuditVerdict {
    bool clean = true;
    std::optional<AuditWitness> witness;
};

struct AuditOptions {
    // Additionally permute one other student's report and re-check that truth
    // stays a best response against each such profile.
    bool adversarial = false;
};

// Every truncated strict order over `schools` schools: for each k, each
// ordered k-arrangement followed by the cutoff. Count = sum_k m!/(m-k)!.
std::vector<PreferenceOrder> enumerate_reports(int schools);

// Exhaustive misreport audit for Settings I/II. The misreport is applied to
// the round it is reported to: the round-1 matching is audited against the
// deferred-acceptance outcome, and the round-2 extension is audited with the
// round-1 matching fixed. Improvement is judged under the true list.
AuditVerdict audit_dsic(Setting setting, const Instance & instance, const Scenario & scenario,
                        int student, const AuditOptions & options = {});

// Exhaustive unilateral audit for Setting III: every misreport for on-time
// participation (scoped per round, as in audit_dsic) and every misreport
// combined with late arrival (full pipeline), all others truthful and on time.
AuditVerdict audit_icne_setting3(const Instance & instance, const Scenario & scenario,
                                 int student);

struct ReplicationCheck {
    std::string label;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct ReplicationReport {
    std::vector<ReplicationCheck> checks;

    bool all_ok() const;
};

// Executable content of the non-oblivious DSIC impossibility proof: the
// Setting-III pair on the three participation patterns of the 4-student
// fixture, including the joint-deviation gain.
ReplicationReport replicate_impossibility1();

// Executable content of the oblivious ICNE impossibility proof: both round-1
// branches of an oblivious pair, each yielding a unilateral late-arrival gain.
ReplicationReport replicate_impossibility2();

}  // namespace schoolmatch
