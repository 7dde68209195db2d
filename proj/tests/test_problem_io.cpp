#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/errors.hpp"
#include "jagg/problem_io.hpp"
#include "jagg/rules.hpp"

using namespace jagg;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(JAGG_FIXTURES_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("a minimal document parses with defaults applied") {
    const ProblemDocument doc = parse_problem(R"({
        "agenda": ["p", "q"],
        "profile": [["+", "-"]]
    })");
    CHECK(doc.agenda == std::vector<std::string>{"p", "q"});
    CHECK(doc.constraint == "true");
    CHECK(doc.profile == std::vector<std::string>{"+-"});
    CHECK(doc.blocks.empty());

    const Agenda agenda = document_agenda(doc);
    CHECK(agenda.size() == 2);
    const Profile profile = document_profile(doc);
    CHECK(profile.size() == 1);
    CHECK(sign_string(profile.member(0)) == "+-");
}

TEST_CASE("compact string rows parse the same as sign-list rows") {
    const ProblemDocument lists = parse_problem(R"({
        "agenda": ["p", "q"],
        "profile": [["+", "+"], ["-", "-"]]
    })");
    const ProblemDocument strings = parse_problem(R"({
        "agenda": ["p", "q"],
        "profile": ["++", "--"]
    })");
    CHECK(lists == strings);
}

TEST_CASE("serialization round-trips and is a fixed point") {
    ProblemDocument doc;
    doc.agenda = {"p", "q", "p & q", "t"};
    doc.constraint = "t -> p | q";
    doc.profile = {"++++", "+--+"};
    doc.blocks = {{"left", {2, 0, 1}}, {"right", {3}}};

    const std::string text = serialize_problem(doc);
    const ProblemDocument reparsed = parse_problem(text);
    CHECK(reparsed.agenda == doc.agenda);
    CHECK(reparsed.constraint == doc.constraint);
    CHECK(reparsed.profile == doc.profile);
    // serialization sorts block indices, so the reparsed blocks are the
    // normalized form of the originals
    CHECK(reparsed.blocks.at("left") == IndexSet{0, 1, 2});
    CHECK(reparsed.blocks.at("right") == IndexSet{3});
    CHECK(serialize_problem(reparsed) == text);
}

TEST_CASE("shipped fixture documents are valid and byte-canonical") {
    for (const std::string name : {"f1.json", "f2.json", "f3.json", "f4.json", "pref3.json"}) {
        CAPTURE(name);
        const std::string text = read_file(fixture_path(name));
        const ProblemDocument doc = parse_problem(text);
        CHECK(serialize_problem(doc) == text);
        CHECK(!doc.profile.empty());
    }

    const ProblemDocument f1 = load_problem(fixture_path("f1.json"));
    CHECK(f1.agenda == std::vector<std::string>{"p", "q", "p & q", "t"});
    CHECK(f1.profile == std::vector<std::string>{"++++", "+--+", "-+--"});
    CHECK(f1.blocks.at("a1") == IndexSet{0, 1, 2});
    CHECK(f1.blocks.at("a2") == IndexSet{3});

    // the documents feed straight into the rules
    const auto outcomes = apply_rule(RuleId::RMax, document_agenda(f1), document_profile(f1));
    REQUIRE(outcomes.size() == 1);
    CHECK(sign_string(outcomes[0]) == "-+-+");

    const ProblemDocument pref3 = load_problem(fixture_path("pref3.json"));
    CHECK(pref3.agenda.size() == 3);
    CHECK(pref3.constraint != "true"); // the transitivity constraint is materialized
}

TEST_CASE("save and load through a file") {
    const ProblemDocument doc = load_problem(fixture_path("f4.json"));
    const std::string path = "/tmp/jagg_test_roundtrip.json";
    save_problem(doc, path);
    CHECK(load_problem(path) == doc);
    std::remove(path.c_str());
}

TEST_CASE("structural problems are rejected as parse errors") {
    // malformed JSON
    CHECK_THROWS_AS(parse_problem("{"), ParseError);
    // not an object
    CHECK_THROWS_AS(parse_problem("[1, 2]"), ParseError);
    // unknown top-level field (typo protection)
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "profile": ["+"], "profiles": []})"),
                    ParseError);
    // missing or ill-typed agenda
    CHECK_THROWS_AS(parse_problem(R"({"profile": ["+"]})"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"agenda": "p", "profile": ["+"]})"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"agenda": [7], "profile": ["+"]})"), ParseError);
    // ill-typed constraint and profile
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "constraint": 1, "profile": ["+"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "profile": "+"})"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "profile": [17]})"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "profile": [["++"]]})"), ParseError);
}

TEST_CASE("semantic problems are rejected as parse errors") {
    // unparseable formula, identified by its position in the agenda
    try {
        parse_problem(R"({"agenda": ["p", "q &"], "profile": ["++"]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("agenda[1]") != std::string::npos);
    }
    // unparseable constraint
    CHECK_THROWS_AS(
        parse_problem(R"({"agenda": ["p"], "constraint": "&&", "profile": ["+"]})"),
        ParseError);
    // duplicate agenda entry
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p", "p"], "profile": ["++"]})"), ParseError);
    // row length mismatch
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p", "q"], "profile": ["+"]})"), ParseError);
    // bad sign character (Absent is not a document sign)
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p", "q"], "profile": ["+."]})"), ParseError);
    // empty profile
    CHECK_THROWS_AS(parse_problem(R"({"agenda": ["p"], "profile": []})"), ParseError);
    // row inconsistent with the constraint
    CHECK_THROWS_AS(parse_problem(
                        R"({"agenda": ["p", "q"], "constraint": "p -> q", "profile": ["+-"]})"),
                    ParseError);
    // the same row is fine when the constraint allows it
    CHECK_NOTHROW(parse_problem(
        R"({"agenda": ["p", "q"], "constraint": "p -> q", "profile": ["-+", "++"]})"));
    // block index out of range, duplicate index, empty name
    CHECK_THROWS_AS(
        parse_problem(R"({"agenda": ["p"], "profile": ["+"], "blocks": {"b": [1]}})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_problem(R"({"agenda": ["p"], "profile": ["+"], "blocks": {"b": [0, 0]}})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_problem(R"({"agenda": ["p"], "profile": ["+"], "blocks": {"": [0]}})"),
        ParseError);
    CHECK_THROWS_AS(
        parse_problem(R"({"agenda": ["p"], "profile": ["+"], "blocks": {"b": [-1]}})"),
        ParseError);
}

TEST_CASE("loading a missing file is a parse error") {
    CHECK_THROWS_AS(load_problem("/nonexistent/missing.json"), ParseError);
}
