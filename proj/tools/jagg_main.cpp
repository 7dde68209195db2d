// Batch command-line front end. Every subcommand prints one JSON document to
// standard output and a short human-readable summary to standard error.
//
// Exit codes:
//   0  success; for `check`, verdict HOLDS or PREMISE_NOT_SATISFIED
//   1  property failure: `check` verdict VIOLATED, `suite` with failures, or
//      `bench` output mismatch for a rule that must factor
//   2  command-line, parse, or document-validation error
//   3  a configured resource limit was exceeded

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/decomposition.hpp"
#include "jagg/errors.hpp"
#include "jagg/formula.hpp"
#include "jagg/limits.hpp"
#include "jagg/problem_io.hpp"
#include "jagg/rules.hpp"
#include "jagg/separability.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace jagg;

Json judgment_json(const JudgmentSet& j) {
    Json out = Json::object();
    out["signs"] = sign_string(j);
    Json formulas = Json::array();
    for (const Formula& f : j.formulas()) formulas.push_back(format_formula(f));
    out["formulas"] = std::move(formulas);
    return out;
}

Json outcomes_json(std::span<const JudgmentSet> outcomes) {
    Json arr = Json::array();
    for (const auto& j : outcomes) arr.push_back(judgment_json(j));
    return arr;
}

Json signs_json(std::span<const JudgmentSet> outcomes) {
    Json arr = Json::array();
    for (const auto& j : outcomes) arr.push_back(sign_string(j));
    return arr;
}

Json blocks_json(std::span<const IndexSet> blocks) {
    Json arr = Json::array();
    for (const auto& b : blocks) arr.push_back(b);
    return arr;
}

void emit(const Json& document) { std::cout << document.dump(2) << "\n"; }

RuleId rule_from_text(const std::string& text) {
    if (auto rule = parse_rule_id(text)) return *rule;
    throw ParseError("unknown rule \"" + text + "\" (expected one of: mc, mcc, ra, rmax, med, rev, full_h)", 0);
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> names;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        names.push_back(text.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return names;
}

// ---------------------------------------------------------------------------

int run_aggregate(const std::string& file, const std::string& rule_text, bool tiebreak) {
    const RuleId rule = rule_from_text(rule_text);
    const ProblemDocument doc = load_problem(file);
    const Agenda agenda = document_agenda(doc);
    const Profile profile = document_profile(doc);
    const std::vector<JudgmentSet> outcomes = apply_rule(rule, agenda, profile);

    Json out = Json::object();
    out["command"] = "aggregate";
    out["file"] = file;
    out["rule"] = to_string(rule);
    out["issues"] = doc.agenda;
    out["constraint"] = doc.constraint;
    out["agents"] = profile.size();
    out["outcomes"] = outcomes_json(outcomes);

    std::optional<JudgmentSet> winner;
    if (tiebreak) {
        winner = apply_tiebreak(outcomes, TieBreaker::lexicographic());
        out["tiebreak"] = judgment_json(*winner);
    }
    emit(out);

    std::cerr << to_string(rule) << ": " << agenda.size() << " issues, " << profile.size()
              << " agents, " << outcomes.size()
              << (outcomes.size() == 1 ? " outcome\n" : " outcomes\n");
    for (const auto& j : outcomes) std::cerr << "  " << sign_string(j) << "\n";
    if (winner) std::cerr << "tiebreak winner: " << sign_string(*winner) << "\n";
    return 0;
}

int run_decompose(const std::string& file, const std::string& mode) {
    const ProblemDocument doc = load_problem(file);
    const Agenda agenda = document_agenda(doc);

    std::vector<IndexSet> blocks;
    std::optional<IndexSet> overlap;
    if (mode == "syntactic") {
        blocks = syntactic_components(agenda);
    } else if (mode == "partition") {
        blocks = find_finest_independent_partition(agenda);
    } else if (mode == "iod") {
        if (const auto iod = find_iod(agenda)) {
            blocks = {iod->first, iod->second};
            IndexSet shared;
            std::ranges::set_intersection(iod->first, iod->second, std::back_inserter(shared));
            overlap = std::move(shared);
        } else {
            IndexSet all(agenda.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            blocks = {std::move(all)};
        }
    }
    const bool trivial = blocks.size() <= 1;

    Json out = Json::object();
    out["command"] = "decompose";
    out["file"] = file;
    out["mode"] = mode;
    out["trivial"] = trivial;
    out["blocks"] = blocks_json(blocks);
    if (overlap) out["overlap"] = *overlap;
    emit(out);

    std::cerr << mode << ": ";
    if (trivial) {
        std::cerr << "trivial (one block of " << agenda.size() << " issues)\n";
    } else {
        std::cerr << blocks.size() << " blocks:";
        for (const auto& b : blocks) {
            std::cerr << " {";
            for (std::size_t k = 0; k < b.size(); ++k) std::cerr << (k ? "," : "") << b[k];
            std::cerr << "}";
        }
        std::cerr << "\n";
    }
    return 0;
}

int run_check(const std::string& file, const std::string& property, const std::string& rule_text,
              const std::string& blocks_text) {
    const RuleId rule = rule_from_text(rule_text);
    const ProblemDocument doc = load_problem(file);
    const Agenda agenda = document_agenda(doc);
    const Profile profile = document_profile(doc);

    const std::vector<std::string> names = split_names(blocks_text);
    if (names.size() < 2) {
        throw ParseError("--blocks needs at least two comma-separated block names", 0);
    }
    std::vector<IndexSet> blocks;
    for (const std::string& name : names) {
        const auto it = doc.blocks.find(name);
        if (it == doc.blocks.end()) {
            throw ParseError("document has no block named \"" + name + "\"", 0);
        }
        blocks.push_back(normalize_block(it->second, agenda.size()));
    }

    bool disjoint = true;
    for (std::size_t i = 0; i < blocks.size() && disjoint; ++i) {
        for (std::size_t k = i + 1; k < blocks.size() && disjoint; ++k) {
            IndexSet shared;
            std::ranges::set_intersection(blocks[i], blocks[k], std::back_inserter(shared));
            disjoint = shared.empty();
        }
    }
    const Decomposition d = [&] {
        if (disjoint) return Decomposition::certified_partition(agenda, blocks);
        if (blocks.size() != 2) {
            throw std::invalid_argument("overlapping blocks are only supported in pairs");
        }
        return Decomposition::certified_iod(agenda, blocks[0], blocks[1]);
    }();

    const SeparabilityReport report = property == "as" ? check_as_instance(rule, profile, d)
                                                       : check_oas_instance(rule, profile, d);

    Json out = Json::object();
    out["command"] = "check";
    out["file"] = file;
    out["property"] = property;
    out["rule"] = to_string(rule);
    Json named = Json::array();
    for (std::size_t i = 0; i < names.size(); ++i) {
        Json entry = Json::object();
        entry["name"] = names[i];
        entry["issues"] = blocks[i];
        named.push_back(std::move(entry));
    }
    out["blocks"] = std::move(named);
    out["kind"] = to_string(d.kind());
    if (d.kind() == DecompositionKind::Overlapping) out["overlap"] = d.overlap();
    out["verdict"] = to_string(report.verdict);
    if (report.witness) {
        Json witness = Json::object();
        witness["direct"] = signs_json(report.witness->direct);
        witness["recombined"] = signs_json(report.witness->recombined);
        out["witness"] = std::move(witness);
    }
    emit(out);

    std::cerr << property << "(" << to_string(rule) << ") on " << blocks_text << ": "
              << to_string(report.verdict) << "\n";
    if (report.witness) {
        std::cerr << "  direct:    ";
        for (const auto& j : report.witness->direct) std::cerr << " " << sign_string(j);
        std::cerr << "\n  recombined:";
        for (const auto& j : report.witness->recombined) std::cerr << " " << sign_string(j);
        std::cerr << "\n";
    }
    return report.verdict == Verdict::Violated ? 1 : 0;
}

int run_bench(std::size_t blocks, std::size_t atoms, std::size_t agents,
              const std::string& rule_text, std::uint64_t seed, std::size_t reps,
              std::size_t issues_per_block) {
    const RuleId rule = rule_from_text(rule_text);
    const Limits limits = suite_limits();
    const DecomposableAgenda da =
        random_decomposable_agenda(blocks, atoms, seed, limits, issues_per_block);
    const Profile profile = random_profile(da.agenda, agents, seed + 1, limits);

    const std::vector<JudgmentSet> direct = apply_rule(rule, da.agenda, profile, limits);
    const std::vector<JudgmentSet> decomposed =
        aggregate_via_decomposition(rule, da.decomposition, profile, limits);

    const auto time_loop = [&](auto&& call) {
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t r = 0; r < reps; ++r) call();
        const auto stop = std::chrono::steady_clock::now();
        return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    };
    const long long direct_ns =
        time_loop([&] { apply_rule(rule, da.agenda, profile, limits); });
    const long long decomposed_ns =
        time_loop([&] { aggregate_via_decomposition(rule, da.decomposition, profile, limits); });

    // The maximin rule is the one rule without the factoring property, so
    // equal outputs cannot be demanded of it; both timings still matter.
    const bool equality_checked = rule != RuleId::RMax;
    const bool outputs_equal = direct == decomposed;

    Json out = Json::object();
    out["command"] = "bench";
    out["rule"] = to_string(rule);
    out["blocks"] = blocks;
    out["atoms_per_block"] = atoms;
    out["issues_per_block"] = issues_per_block;
    out["agents"] = agents;
    out["seed"] = seed;
    out["reps"] = reps;
    Json issues = Json::array();
    for (std::size_t i = 0; i < da.agenda.size(); ++i) {
        issues.push_back(format_formula(da.agenda.issue(i)));
    }
    out["issues"] = std::move(issues);
    out["block_indices"] = blocks_json(da.decomposition.blocks());
    out["outcomes"] = signs_json(direct);
    out["direct_ns_per_call"] = reps ? direct_ns / static_cast<long long>(reps) : 0;
    out["decomposed_ns_per_call"] = reps ? decomposed_ns / static_cast<long long>(reps) : 0;
    if (decomposed_ns > 0) {
        out["speedup"] = static_cast<double>(direct_ns) / static_cast<double>(decomposed_ns);
    }
    out["equality_checked"] = equality_checked;
    out["outputs_equal"] = outputs_equal;
    emit(out);

    std::cerr << "bench " << to_string(rule) << ": " << da.agenda.size() << " issues in "
              << da.decomposition.blocks().size() << " blocks, " << agents << " agents, " << reps
              << " reps\n  direct " << (reps ? direct_ns / static_cast<long long>(reps) : 0)
              << " ns/call, decomposed "
              << (reps ? decomposed_ns / static_cast<long long>(reps) : 0) << " ns/call";
    if (decomposed_ns > 0) {
        std::cerr << ", speedup "
                  << static_cast<double>(direct_ns) / static_cast<double>(decomposed_ns) << "x";
    }
    std::cerr << "\n  outputs " << (outputs_equal ? "equal" : "DIFFER")
              << (equality_checked ? "" : " (equality not required for this rule)") << "\n";
    return equality_checked && !outputs_equal ? 1 : 0;
}

int run_suite(std::size_t trials, std::uint64_t seed) {
    SuiteConfig config;
    config.trials = trials;
    config.seed = seed;
    const SuiteReport report = run_property_suite(config);

    Json out = Json::object();
    out["command"] = "suite";
    out["trials"] = trials;
    out["seed"] = seed;
    Json sections = Json::array();
    for (const SuiteSection& s : report.sections) {
        Json sec = Json::object();
        sec["name"] = s.name;
        sec["checks"] = s.checks;
        sec["premise_skips"] = s.premise_skips;
        sec["failures"] = s.failures;
        sec["details"] = s.details;
        sections.push_back(std::move(sec));
    }
    out["sections"] = std::move(sections);
    out["reversal_counterexample"] =
        report.reversal_counterexample ? Json(*report.reversal_counterexample) : Json(nullptr);
    out["passed"] = report.passed();
    emit(out);

    std::cerr << to_string(report);
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Judgment aggregation: rules, agenda decomposition, separability checks."};
    app.require_subcommand(1);

    auto* agg = app.add_subcommand("aggregate", "Apply an aggregation rule to a problem file");
    std::string agg_rule;
    bool agg_tiebreak = false;
    std::string agg_file;
    agg->add_option("--rule", agg_rule, "Rule: mc, mcc, ra, rmax, med, rev, full_h")->required();
    agg->add_flag("--tiebreak", agg_tiebreak, "Also report the lexicographic tie-break winner");
    agg->add_option("file", agg_file, "Problem document (JSON)")->required();

    auto* dec = app.add_subcommand("decompose", "Search for agenda decompositions");
    std::string dec_mode;
    std::string dec_file;
    dec->add_option("--mode", dec_mode, "syntactic, partition, or iod")
        ->required()
        ->check(CLI::IsMember({"syntactic", "partition", "iod"}));
    dec->add_option("file", dec_file, "Problem document (JSON)")->required();

    auto* chk = app.add_subcommand("check", "Check a separability property on named blocks");
    std::string chk_property;
    std::string chk_rule;
    std::string chk_blocks;
    std::string chk_file;
    chk->add_option("--property", chk_property, "as (disjoint blocks) or oas (overlap allowed)")
        ->required()
        ->check(CLI::IsMember({"as", "oas"}));
    chk->add_option("--rule", chk_rule, "Rule: mc, mcc, ra, rmax, med, rev, full_h")->required();
    chk->add_option("--blocks", chk_blocks, "Comma-separated block names from the document")
        ->required();
    chk->add_option("file", chk_file, "Problem document (JSON)")->required();

    auto* ben = app.add_subcommand("bench", "Time direct vs blockwise aggregation on a random instance");
    std::size_t ben_blocks = 3;
    std::size_t ben_atoms = 2;
    std::size_t ben_agents = 5;
    std::string ben_rule = "med";
    std::uint64_t ben_seed = 0;
    std::size_t ben_reps = 100;
    std::size_t ben_issues = 3;
    ben->add_option("--blocks", ben_blocks, "Number of independent blocks (default 3)");
    ben->add_option("--atoms", ben_atoms, "Atoms per block (default 2)");
    ben->add_option("--agents", ben_agents, "Profile size (default 5)");
    ben->add_option("--rule", ben_rule, "Rule to benchmark (default med)");
    ben->add_option("--seed", ben_seed, "Instance seed (default 0)");
    ben->add_option("--reps", ben_reps, "Timed repetitions per variant (default 100)");
    ben->add_option("--issues", ben_issues, "Issues per block, 0 = random 1-2 (default 3)");

    auto* sui = app.add_subcommand("suite", "Run the separability property suite");
    std::size_t sui_trials = 200;
    std::uint64_t sui_seed = 0;
    sui->add_option("--trials", sui_trials, "Random instances per section (default 200)");
    sui->add_option("--seed", sui_seed, "Master seed (default 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e); // --help / --version
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*agg) return run_aggregate(agg_file, agg_rule, agg_tiebreak);
        if (*dec) return run_decompose(dec_file, dec_mode);
        if (*chk) return run_check(chk_file, chk_property, chk_rule, chk_blocks);
        if (*ben) {
            return run_bench(ben_blocks, ben_atoms, ben_agents, ben_rule, ben_seed, ben_reps,
                             ben_issues);
        }
        if (*sui) return run_suite(sui_trials, sui_seed);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
