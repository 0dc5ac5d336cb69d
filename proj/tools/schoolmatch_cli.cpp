#include <schoolmatch/enumeration.hpp>
#include <schoolmatch/incentives.hpp>
#include <schoolmatch/json_io.hpp>
#include <schoolmatch/pipeline.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <set>
#include <string>

namespace {

using namespace schoolmatch;

void emit(const std::string & out_path, const std::string & text)
{
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

Setting parse_setting(const std::string & tag)
{
    if (tag == "I")
        return Setting::I;
    if (tag == "II")
        return Setting::II;
    if (tag == "III")
        return Setting::III;
    throw ParseError("--setting: expected I, II or III");
}

std::vector<int> full_scope(const Instance & instance, const Scenario & scenario)
{
    std::set<int> scope(scenario.round1.begin(), scenario.round1.end());
    scope.insert(scenario.defectors.begin(), scenario.defectors.end());
    scope.insert(scenario.newcomers.begin(), scenario.newcomers.end());
    return {scope.begin(), scope.end()};
}

struct RunArgs {
    std::string instance_path, scenario_path, matching_path, out_path, setting, objective;
    int round = 0;  // 0 = both rounds
    std::optional<int> cap;
    bool trace = false;
};

int cmd_run(const RunArgs & args)
{
    Instance instance = parse_instance(read_file(args.instance_path));
    Scenario scenario = parse_scenario(read_file(args.scenario_path), instance);
    if (! args.setting.empty())
        scenario.setting = parse_setting(args.setting);

    PipelineOptions options;
    options.cap = args.cap;
    if (args.objective == "minN")
        options.objective = Round2Objective::MinNMaxL;
    else if (args.objective == "maxUnion")
        options.objective = Round2Objective::MaxUnion;
    else if (! args.objective.empty())
        throw ParseError("--objective: expected minN or maxUnion");
    if (args.trace)
        options.trace = [](const std::string & line) { std::cerr << line << "\n"; };

    const auto & caps = instance.capacities();
    if (args.round == 1) {
        Matching m = run_round1(instance, scenario, options.trace);
        emit(args.out_path, serialize_matching(instance, m, scenario.round1, caps));
        return 0;
    }
    if (args.round == 2) {
        if (args.matching_path.empty())
            throw ParseError("run --round 2 requires --matching");
        MatchingDoc doc = parse_matching(read_file(args.matching_path), instance);
        ExtensionResult result = run_round2(instance, scenario, doc.matching, options);
        emit(args.out_path,
             serialize_extension(instance, result, full_scope(instance, scenario), caps));
        return 0;
    }
    PipelineResult result = run_both_rounds(instance, scenario, options);
    emit(args.out_path,
         serialize_extension(instance, result.round2, full_scope(instance, scenario), caps));
    return 0;
}

int cmd_check_stability(const std::string & instance_path, const std::string & matching_path,
                        const std::string & out_path)
{
    Instance instance = parse_instance(read_file(instance_path));
    MatchingDoc doc = parse_matching(read_file(matching_path), instance);
    auto pairs = find_blocking_pairs(instance, doc.matching, instance.capacities(), doc.scope);
    std::string text;
    for (const auto & p : pairs) {
        text += p.kind == BlockingKind::Type1 ? "TYPE1 " : "TYPE2 ";
        text += instance.student_names()[p.student] + " " + instance.school_names()[p.school] +
            "\n";
    }
    emit(out_path, text);
    return pairs.empty() ? 0 : 1;
}

int cmd_enumerate(const std::string & instance_path, const std::string & matching_path,
                  const std::vector<std::string> & newcomer_names, std::optional<int> limit,
                  bool count_only, const std::string & out_path)
{
    Instance instance = parse_instance(read_file(instance_path));
    MatchingDoc doc = parse_matching(read_file(matching_path), instance);
    std::vector<int> newcomers;
    for (const auto & name : newcomer_names)
        newcomers.push_back(instance.student_index(name));

    std::vector<int> scope = doc.scope;
    scope.insert(scope.end(), newcomers.begin(), newcomers.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

    ExtensionStream stream(instance, doc.matching, instance.capacities(), newcomers);
    std::string text;
    long count = 0;
    while (auto m = stream.next()) {
        ++count;
        if (! count_only) {
            std::string doc_text =
                serialize_matching(instance, *m, scope, instance.capacities());
            // one compact document per line
            text += nlohmann::ordered_json::parse(doc_text).dump() + "\n";
        }
        if (limit && count >= *limit)
            break;
    }
    if (count_only)
        text = std::to_string(count) + "\n";
    emit(out_path, text);
    return 0;
}

std::string witness_json(const Instance & instance, const AuditWitness & w)
{
    std::string report = w.deviation.misreport ? "[" : "null";
    if (w.deviation.misreport) {
        for (std::size_t i = 0; i < w.deviation.misreport->size(); ++i)
            report += (i ? ",\"" : "\"") +
                instance.school_names()[(*w.deviation.misreport)[i]] + "\"";
        report += "]";
    }
    auto school = [&](int h) {
        return h == kNone ? std::string("null") : "\"" + instance.school_names()[h] + "\"";
    };
    return "{\"student\":\"" + instance.student_names()[w.deviation.student] +
        "\",\"misreport\":" + report +
        ",\"late\":" + (w.deviation.late_arrival ? "true" : "false") +
        ",\"truthful\":" + school(w.truthful_school) +
        ",\"deviant\":" + school(w.deviant_school) + "}\n";
}

int cmd_audit(const std::string & instance_path, const std::string & scenario_path,
              const std::string & mode, const std::string & student_name, bool adversarial,
              int max_schools, const std::string & out_path)
{
    Instance instance = parse_instance(read_file(instance_path));
    Scenario scenario = parse_scenario(read_file(scenario_path), instance);
    if (instance.school_count() > max_schools)
        throw ParseError("audit: instance exceeds --max-schools (report count is factorial)");

    std::vector<int> targets;
    if (student_name.empty())
        for (int s = 0; s < instance.student_count(); ++s)
            targets.push_back(s);
    else
        targets.push_back(instance.student_index(student_name));

    AuditOptions options;
    options.adversarial = adversarial;
    for (int s : targets) {
        AuditVerdict verdict = mode == "icne"
            ? audit_icne_setting3(instance, scenario, s)
            : audit_dsic(scenario.setting, instance, scenario, s, options);
        if (! verdict.clean) {
            emit(out_path, witness_json(instance, *verdict.witness));
            return 1;
        }
    }
    emit(out_path, "");
    return 0;
}

int cmd_replicate(int which, const std::string & out_path)
{
    ReplicationReport report = which == 1 ? replicate_impossibility1()
                                          : replicate_impossibility2();
    std::string text;
    for (const auto & c : report.checks)
        text += std::string(c.ok ? "ok   " : "FAIL ") + c.label + ": expected [" + c.expected +
            "] got [" + c.actual + "]\n";
    emit(out_path, text);
    return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Two-round school-choice matching toolkit"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto * run = app.add_subcommand("run", "Run round 1, round 2, or both");
    run->add_option("--instance", run_args.instance_path)->required();
    run->add_option("--scenario", run_args.scenario_path)->required();
    run->add_option("--matching", run_args.matching_path,
                    "Round-1 matching file (required with --round 2)");
    run->add_option("--setting", run_args.setting, "Override the scenario's setting tag");
    run->add_option("--round", run_args.round)->check(CLI::Range(1, 2));
    run->add_flag_callback("--both-rounds", [&] { run_args.round = 0; },
                           "Chain both rounds (default)");
    run->add_option("--objective", run_args.objective, "Setting II: minN (default) or maxUnion");
    int cap_value = -1;
    auto * cap_opt = run->add_option("--cap", cap_value, "Setting I: expansion seat budget");
    run->add_option("--out", run_args.out_path);
    run->add_flag("--trace", run_args.trace, "Proposal/rejection trace on stderr");

    std::string cs_instance, cs_matching, cs_out;
    auto * check = app.add_subcommand("check-stability", "List blocking pairs");
    check->add_option("--instance", cs_instance)->required();
    check->add_option("--matching", cs_matching)->required();
    check->add_option("--out", cs_out);

    std::string en_instance, en_matching, en_out;
    std::vector<std::string> en_new;
    int en_limit = 0;
    bool en_count_only = false;
    auto * enumerate = app.add_subcommand("enumerate", "Stream all stable extensions");
    enumerate->add_option("--instance", en_instance)->required();
    enumerate->add_option("--matching", en_matching)->required();
    enumerate->add_option("--new", en_new, "Newcomer names")->required();
    auto * limit_opt = enumerate->add_option("--limit", en_limit);
    enumerate->add_flag("--count-only", en_count_only);
    enumerate->add_option("--out", en_out);

    std::string au_instance, au_scenario, au_mode = "dsic", au_student, au_out;
    bool au_adversarial = false;
    int au_max_schools = 3;
    auto * audit = app.add_subcommand(
        "audit", "Exhaustive misreport audit (report count grows factorially in schools)");
    audit->add_option("--instance", au_instance)->required();
    audit->add_option("--scenario", au_scenario)->required();
    audit->add_option("--mode", au_mode)->check(CLI::IsMember({"dsic", "icne"}));
    audit->add_option("--student", au_student, "Audit one student (default: all)");
    audit->add_flag("--adversarial", au_adversarial,
                    "Also permute one other student's report");
    audit->add_option("--max-schools", au_max_schools, "Refuse larger instances (default 3)");
    audit->add_option("--out", au_out);

    RandomSpec gen_spec;
    std::string gen_out;
    auto * gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--seed", gen_spec.seed);
    gen->add_option("--students", gen_spec.students)->required();
    gen->add_option("--schools", gen_spec.schools)->required();
    gen->add_option("--cap-min", gen_spec.capacity_min);
    gen->add_option("--cap-max", gen_spec.capacity_max);
    gen->add_option("--student-cutoff-density", gen_spec.student_cutoff_density);
    gen->add_option("--school-cutoff-density", gen_spec.school_cutoff_density);
    gen->add_option("--out", gen_out);

    int rep_which = 1;
    std::string rep_out;
    auto * replicate = app.add_subcommand("replicate", "Replay an impossibility counterexample");
    replicate->add_option("--which", rep_which)->check(CLI::Range(1, 2))->required();
    replicate->add_option("--out", rep_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (cap_opt->count())
                run_args.cap = cap_value;
            return cmd_run(run_args);
        }
        if (check->parsed())
            return cmd_check_stability(cs_instance, cs_matching, cs_out);
        if (enumerate->parsed())
            return cmd_enumerate(en_instance, en_matching, en_new,
                                 limit_opt->count() ? std::optional<int>(en_limit) : std::nullopt,
                                 en_count_only, en_out);
        if (audit->parsed())
            return cmd_audit(au_instance, au_scenario, au_mode, au_student, au_adversarial,
                             au_max_schools, au_out);
        if (gen->parsed()) {
            if (gen_spec.capacity_max < gen_spec.capacity_min)
                gen_spec.capacity_max = gen_spec.capacity_min;
            emit(gen_out, serialize_instance(generate_random(gen_spec)));
            return 0;
        }
        if (replicate->parsed())
            return cmd_replicate(rep_which, rep_out);
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const ValidationError & e) {
        std::cerr << "error: invalid instance\n";
        for (const auto & issue : e.issues)
            std::cerr << "  " << issue << "\n";
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
