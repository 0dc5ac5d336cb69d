#include <schoolmatch/json_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace schoolmatch {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string & text, const char * what)
{
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ParseError(std::string(what) + ": not valid JSON");
    return doc;
}

const json & field(const json & doc, const char * key, const char * what)
{
    auto it = doc.find(key);
    if (it == doc.end())
        throw ParseError(std::string(what) + ": missing \"" + key + "\"");
    return *it;
}

std::vector<std::string> name_list(const json & node, const char * what)
{
    if (! node.is_array())
        throw ParseError(std::string(what) + ": expected an array of names");
    std::vector<std::string> out;
    for (const auto & entry : node) {
        if (! entry.is_string())
            throw ParseError(std::string(what) + ": expected string names");
        out.push_back(entry.get<std::string>());
    }
    return out;
}

int lookup(const Instance & instance, const std::string & name, bool student, const char * what)
{
    try {
        return student ? instance.student_index(name) : instance.school_index(name);
    }
    catch (const std::out_of_range &) {
        throw ParseError(std::string(what) + ": unknown name \"" + name + "\"");
    }
}

std::vector<int> id_list(const json & node, const Instance & instance, bool student,
                         const char * what)
{
    std::vector<int> out;
    for (const auto & name : name_list(node, what))
        out.push_back(lookup(instance, name, student, what));
    return out;
}

}  // namespace

Instance parse_instance(const std::string & text)
{
    json doc = parse_text(text, "instance");
    auto student_names = name_list(field(doc, "students", "instance"), "instance.students");

    std::vector<std::string> school_names;
    CapacityProfile capacities;
    const json & schools = field(doc, "schools", "instance");
    if (! schools.is_array())
        throw ParseError("instance.schools: expected an array");
    for (const auto & entry : schools) {
        if (! entry.is_object() || ! entry.contains("name") || ! entry.contains("capacity"))
            throw ParseError("instance.schools: expected {\"name\", \"capacity\"} objects");
        school_names.push_back(entry["name"].get<std::string>());
        if (! entry["capacity"].is_number_integer())
            throw ParseError("instance.schools: capacity must be an integer");
        capacities.push_back(entry["capacity"].get<int>());
    }

    auto name_to_id = [](const std::vector<std::string> & names, const std::string & name,
                         const char * what) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name)
                return static_cast<int>(i);
        throw ParseError(std::string(what) + ": unknown name \"" + name + "\"");
    };

    std::vector<PreferenceOrder> student_prefs(student_names.size());
    const json & sp = field(doc, "student_prefs", "instance");
    for (const auto & [who, list] : sp.items()) {
        int s = name_to_id(student_names, who, "instance.student_prefs");
        for (const auto & school : name_list(list, "instance.student_prefs"))
            student_prefs[s].push_back(name_to_id(school_names, school,
                                                  "instance.student_prefs"));
    }

    std::vector<PreferenceOrder> school_prefs(school_names.size());
    const json & hp = field(doc, "school_prefs", "instance");
    for (const auto & [who, list] : hp.items()) {
        int h = name_to_id(school_names, who, "instance.school_prefs");
        for (const auto & student : name_list(list, "instance.school_prefs"))
            school_prefs[h].push_back(name_to_id(student_names, student,
                                                 "instance.school_prefs"));
    }

    return validate_instance(std::move(student_names), std::move(school_names),
                             std::move(student_prefs), std::move(school_prefs),
                             std::move(capacities));
}

std::string serialize_instance(const Instance & instance)
{
    json doc;
    doc["students"] = instance.student_names();
    doc["schools"] = json::array();
    for (int h = 0; h < instance.school_count(); ++h)
        doc["schools"].push_back(
            {{"name", instance.school_names()[h]}, {"capacity", instance.capacity(h)}});
    doc["student_prefs"] = json::object();
    for (int s = 0; s < instance.student_count(); ++s) {
        json list = json::array();
        for (int h : instance.student_prefs(s))
            list.push_back(instance.school_names()[h]);
        doc["student_prefs"][instance.student_names()[s]] = std::move(list);
    }
    doc["school_prefs"] = json::object();
    for (int h = 0; h < instance.school_count(); ++h) {
        json list = json::array();
        for (int s : instance.school_prefs(h))
            list.push_back(instance.student_names()[s]);
        doc["school_prefs"][instance.school_names()[h]] = std::move(list);
    }
    return doc.dump(2) + "\n";
}

Scenario parse_scenario(const std::string & text, const Instance & instance)
{
    json doc = parse_text(text, "scenario");
    Scenario scenario;
    std::string setting = field(doc, "setting", "scenario").get<std::string>();
    if (setting == "I")
        scenario.setting = Setting::I;
    else if (setting == "II")
        scenario.setting = Setting::II;
    else if (setting == "III")
        scenario.setting = Setting::III;
    else
        throw ParseError("scenario.setting: expected \"I\", \"II\" or \"III\"");
    scenario.round1 = id_list(field(doc, "round1", "scenario"), instance, true,
                              "scenario.round1");
    if (doc.contains("defectors"))
        scenario.defectors = id_list(doc["defectors"], instance, true, "scenario.defectors");
    if (doc.contains("new"))
        scenario.newcomers = id_list(doc["new"], instance, true, "scenario.new");
    return scenario;
}

std::string serialize_scenario(const Instance & instance, const Scenario & scenario)
{
    json doc;
    switch (scenario.setting) {
        case Setting::I: doc["setting"] = "I"; break;
        case Setting::II: doc["setting"] = "II"; break;
        case Setting::III: doc["setting"] = "III"; break;
    }
    auto names = [&](const std::vector<int> & ids) {
        json list = json::array();
        for (int s : ids)
            list.push_back(instance.student_names()[s]);
        return list;
    };
    doc["round1"] = names(scenario.round1);
    doc["defectors"] = names(scenario.defectors);
    doc["new"] = names(scenario.newcomers);
    return doc.dump(2) + "\n";
}

MatchingDoc parse_matching(const std::string & text, const Instance & instance)
{
    json doc = parse_text(text, "matching");
    MatchingDoc out;
    out.matching = Matching(instance);
    const json & assignment = field(doc, "assignment", "matching");
    if (! assignment.is_object())
        throw ParseError("matching.assignment: expected an object");
    for (const auto & [who, school] : assignment.items()) {
        int s = lookup(instance, who, true, "matching.assignment");
        out.scope.push_back(s);
        if (school.is_null())
            continue;
        if (! school.is_string())
            throw ParseError("matching.assignment: expected a school name or null");
        int h = lookup(instance, school.get<std::string>(), false, "matching.assignment");
        try {
            out.matching.assign(instance, s, h);
        }
        catch (const std::invalid_argument & e) {
            throw ParseError(std::string("matching.assignment: ") + e.what());
        }
    }
    std::sort(out.scope.begin(), out.scope.end());
    return out;
}

namespace {

json matching_body(const Instance & instance, const Matching & m, std::span<const int> scope,
                   const CapacityProfile & base_caps)
{
    json doc;
    doc["assignment"] = json::object();
    for (int s : scope) {
        int h = m.school_of(s);
        doc["assignment"][instance.student_names()[s]] =
            h == kNone ? json(nullptr) : json(instance.school_names()[h]);
    }
    doc["seats_added"] = json::object();
    auto extra = seats_added(instance, m, base_caps);
    for (int h = 0; h < instance.school_count(); ++h)
        doc["seats_added"][instance.school_names()[h]] = extra[h];
    return doc;
}

}  // namespace

std::string serialize_matching(const Instance & instance, const Matching & m,
                               std::span<const int> scope, const CapacityProfile & base_caps)
{
    return matching_body(instance, m, scope, base_caps).dump(2) + "\n";
}

std::string serialize_extension(const Instance & instance, const ExtensionResult & result,
                                std::span<const int> scope, const CapacityProfile & base_caps)
{
    json doc = matching_body(instance, result.extended, scope, base_caps);
    auto names = [&](const std::vector<int> & ids) {
        json list = json::array();
        for (int s : ids)
            list.push_back(instance.student_names()[s]);
        return list;
    };
    doc["admitted"] = {{"N", names(result.admitted_n)},
                       {"S2", names(result.admitted_s2)},
                       {"L", names(result.admitted_l)}};
    doc["barriers"] = json::object();
    for (int h = 0; h < instance.school_count(); ++h) {
        Threshold t = result.barriers.empty() ? Threshold{} : result.barriers[h];
        doc["barriers"][instance.school_names()[h]] =
            t.is_cutoff() ? "CUTOFF" : instance.student_names()[t.student];
    }
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        throw ParseError("cannot write " + path);
    out << text;
}

}  // namespace schoolmatch
