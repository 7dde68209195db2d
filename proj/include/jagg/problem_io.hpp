#pragma once

#include <map>
#include <string>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/limits.hpp"

namespace jagg {

// On-disk description of an aggregation problem. JSON shape:
//
//   {
//     "agenda":     ["p", "q", "p & q", "t"],
//     "constraint": "true",
//     "profile":    [["+", "+", "+", "+"],
//                    ["+", "-", "-", "+"]],
//     "blocks":     { "left": [0, 1, 2], "right": [3] }
//   }
//
// `agenda` lists the preagenda formulas in issue order. `constraint` is
// optional and defaults to "true". Each profile row assigns one sign per
// issue; the canonical form is a list of "+"/"-" strings, and a compact
// "++-+" string per row is accepted on input. `blocks` optionally names
// issue-index sets for use with the separability checkers; it may be
// omitted or empty.
//
// Parsing validates everything: the JSON structure (unknown top-level keys
// are rejected), the formulas, the agenda invariants, row lengths and
// signs, the completeness and constraint-consistency of every row, the
// non-emptiness of the profile, and the block index ranges. All of these
// raise ParseError; bounds from Limits raise ResourceLimitError.
struct ProblemDocument {
    std::vector<std::string> agenda;
    std::string constraint = "true";
    std::vector<std::string> profile; // one "+-" string per row
    std::map<std::string, IndexSet> blocks;

    bool operator==(const ProblemDocument&) const = default;
};

ProblemDocument parse_problem(const std::string& json_text, const Limits& limits = {});
ProblemDocument load_problem(const std::string& path, const Limits& limits = {});

// Canonical rendering: two-space indent, fields in declaration order,
// profile rows as sign-string lists, block indices sorted, trailing
// newline. parse_problem(serialize_problem(d)) == d, so loading a file and
// saving it again reaches a fixed point after one pass (the only changes a
// first pass can make are materializing the default constraint, compacting
// row syntax, and sorting block indices).
std::string serialize_problem(const ProblemDocument& doc);
void save_problem(const ProblemDocument& doc, const std::string& path);

// Materialize the validated document into library objects.
Agenda document_agenda(const ProblemDocument& doc, const Limits& limits = {});
Profile document_profile(const ProblemDocument& doc, const Limits& limits = {});

} // namespace jagg
