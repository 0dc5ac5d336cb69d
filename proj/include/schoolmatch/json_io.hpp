#pragma once

#include <schoolmatch/instance.hpp>
#include <schoolmatch/matching.hpp>
#include <schoolmatch/mechanisms.hpp>

#include <string>
#include <vector>

namespace schoolmatch {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Instance parse_instance(const std::string & text);
std::string serialize_instance(const Instance & instance);

Scenario parse_scenario(const std::string & text, const Instance & instance);
std::string serialize_scenario(const Instance & instance, const Scenario & scenario);

// Matching documents carry the assignment for the students in scope (null =
// unassigned) plus per-school seats added beyond base capacity.
struct MatchingDoc {
    Matching matching;
    std::vector<int> scope;  // students present in the document
};

MatchingDoc parse_matching(const std::string & text, const Instance & instance);
std::string serialize_matching(const Instance & instance, const Matching & m,
                               std::span<const int> scope, const CapacityProfile & base_caps);

// Matching JSON plus admitted sets and barriers.
std::string serialize_extension(const Instance & instance, const ExtensionResult & result,
                                std::span<const int> scope, const CapacityProfile & base_caps);

std::string read_file(const std::string & path);
void write_file(const std::string & path, const std::string & text);

}  // namespace schoolmatch
