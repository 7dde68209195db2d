#include "jagg/problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jagg/errors.hpp"
#include "jagg/formula.hpp"

namespace jagg {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message, std::size_t position = 0) {
    throw ParseError(message, position);
}

// One profile row as a "+-" string. Accepts either a compact string or a
// list of single-character strings.
std::string row_string(const Json& row, std::size_t row_index) {
    const std::string where = "profile row " + std::to_string(row_index);
    std::string signs;
    if (row.is_string()) {
        signs = row.get<std::string>();
    } else if (row.is_array()) {
        for (const auto& cell : row) {
            if (!cell.is_string() || cell.get<std::string>().size() != 1) {
                fail(where + ": cells must be one-character strings");
            }
            signs += cell.get<std::string>();
        }
    } else {
        fail(where + ": expected a sign string or a list of signs");
    }
    for (char c : signs) {
        if (c != '+' && c != '-') {
            fail(where + ": signs must be '+' or '-', got '" + std::string(1, c) + "'");
        }
    }
    return signs;
}

IndexSet block_indices(const Json& value, const std::string& name) {
    if (!value.is_array()) fail("block \"" + name + "\": expected a list of issue indices");
    IndexSet indices;
    for (const auto& entry : value) {
        if (!entry.is_number_unsigned()) {
            fail("block \"" + name + "\": indices must be non-negative integers");
        }
        indices.push_back(entry.get<std::size_t>());
    }
    return indices;
}

// Full semantic validation: builds the agenda and the profile, which check
// formula syntax, agenda invariants, and row completeness/consistency.
// Library construction errors surface as std::invalid_argument; translate
// them into ParseError so callers see one kind of document failure.
void validate(const ProblemDocument& doc, const Limits& limits) {
    Agenda agenda = [&] {
        try {
            return document_agenda(doc, limits);
        } catch (const std::invalid_argument& e) {
            fail(std::string("invalid agenda: ") + e.what());
        }
    }();
    for (std::size_t r = 0; r < doc.profile.size(); ++r) {
        if (doc.profile[r].size() != agenda.size()) {
            fail("profile row " + std::to_string(r) + ": has " +
                 std::to_string(doc.profile[r].size()) + " signs, agenda has " +
                 std::to_string(agenda.size()) + " issues");
        }
    }
    if (doc.profile.empty()) fail("profile: must contain at least one row");
    try {
        document_profile(doc, limits);
    } catch (const std::invalid_argument& e) {
        fail(std::string("invalid profile: ") + e.what());
    }
    for (const auto& [name, indices] : doc.blocks) {
        if (name.empty()) fail("blocks: names must be non-empty");
        try {
            normalize_block(indices, agenda.size());
        } catch (const std::invalid_argument& e) {
            fail("block \"" + name + "\": " + e.what());
        }
    }
}

} // namespace

ProblemDocument parse_problem(const std::string& json_text, const Limits& limits) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!root.is_object()) fail("document must be a JSON object");

    for (const auto& [key, value] : root.items()) {
        (void)value;
        if (key != "agenda" && key != "constraint" && key != "profile" && key != "blocks") {
            fail("unknown field \"" + key + "\"");
        }
    }

    ProblemDocument doc;

    if (!root.contains("agenda") || !root["agenda"].is_array()) {
        fail("\"agenda\" must be a list of formula strings");
    }
    for (const auto& entry : root["agenda"]) {
        if (!entry.is_string()) fail("\"agenda\" entries must be strings");
        doc.agenda.push_back(entry.get<std::string>());
    }

    if (root.contains("constraint")) {
        if (!root["constraint"].is_string()) fail("\"constraint\" must be a string");
        doc.constraint = root["constraint"].get<std::string>();
    }

    if (!root.contains("profile") || !root["profile"].is_array()) {
        fail("\"profile\" must be a list of rows");
    }
    std::size_t row_index = 0;
    for (const auto& row : root["profile"]) {
        doc.profile.push_back(row_string(row, row_index++));
    }

    if (root.contains("blocks")) {
        if (!root["blocks"].is_object()) fail("\"blocks\" must be an object");
        for (const auto& [name, value] : root["blocks"].items()) {
            doc.blocks.emplace(name, block_indices(value, name));
        }
    }

    validate(doc, limits);
    return doc;
}

ProblemDocument load_problem(const std::string& path, const Limits& limits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str(), limits);
}

std::string serialize_problem(const ProblemDocument& doc) {
    Json root = Json::object();
    root["agenda"] = doc.agenda;
    root["constraint"] = doc.constraint;
    Json rows = Json::array();
    for (const std::string& row : doc.profile) {
        Json cells = Json::array();
        for (char c : row) cells.push_back(std::string(1, c));
        rows.push_back(std::move(cells));
    }
    root["profile"] = std::move(rows);
    if (!doc.blocks.empty()) {
        Json blocks = Json::object();
        for (const auto& [name, indices] : doc.blocks) {
            IndexSet sorted = indices;
            std::sort(sorted.begin(), sorted.end());
            blocks[name] = sorted;
        }
        root["blocks"] = std::move(blocks);
    }
    return root.dump(2) + "\n";
}

void save_problem(const ProblemDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << serialize_problem(doc);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Agenda document_agenda(const ProblemDocument& doc, const Limits& limits) {
    std::vector<Formula> preagenda;
    preagenda.reserve(doc.agenda.size());
    for (std::size_t i = 0; i < doc.agenda.size(); ++i) {
        try {
            preagenda.push_back(parse_formula(doc.agenda[i]));
        } catch (const ParseError& e) {
            fail("agenda[" + std::to_string(i) + "]: " + e.what(), e.position());
        }
    }
    Formula constraint = [&] {
        try {
            return parse_formula(doc.constraint);
        } catch (const ParseError& e) {
            fail(std::string("constraint: ") + e.what(), e.position());
        }
    }();
    return Agenda(std::move(preagenda), std::move(constraint), limits);
}

Profile document_profile(const ProblemDocument& doc, const Limits& limits) {
    return profile_from_strings(document_agenda(doc, limits), doc.profile, limits);
}

} // namespace jagg
