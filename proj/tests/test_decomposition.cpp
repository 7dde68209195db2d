#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jagg/core.hpp"
#include "jagg/decomposition.hpp"
#include "jagg/errors.hpp"
#include "jagg/rules.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace jagg;

namespace {

std::vector<std::string> strings_of(const std::vector<JudgmentSet>& sets) {
    std::vector<std::string> out;
    out.reserve(sets.size());
    for (const JudgmentSet& s : sets) out.push_back(sign_string(s));
    return out;
}

// All set partitions of {0, ..., m-1} via restricted growth strings.
std::vector<std::vector<IndexSet>> all_partitions(std::size_t m) {
    std::vector<std::vector<IndexSet>> result;
    std::vector<std::size_t> rgs(m, 0);
    std::function<void(std::size_t, std::size_t)> descend = [&](std::size_t i, std::size_t maxv) {
        if (i == m) {
            std::size_t k = *std::max_element(rgs.begin(), rgs.end()) + 1;
            std::vector<IndexSet> blocks(k);
            for (std::size_t t = 0; t < m; ++t) blocks[rgs[t]].push_back(t);
            result.push_back(std::move(blocks));
            return;
        }
        for (std::size_t v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            descend(i + 1, std::max(maxv, v));
        }
    };
    descend(1, 0);
    return result;
}

// Common refinement of every independent partition, computed from first
// principles: two issues share a finest-partition block exactly when every
// independent partition keeps them together.
std::vector<IndexSet> brute_finest_partition(const Agenda& a) {
    const std::size_t m = a.size();
    std::vector<std::vector<bool>> together(m, std::vector<bool>(m, true));
    for (const std::vector<IndexSet>& blocks : all_partitions(m)) {
        if (!is_independent_partition(a, blocks)) continue;
        std::vector<std::size_t> block_of(m, 0);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t i : blocks[b]) block_of[i] = b;
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                if (block_of[i] != block_of[j]) together[i][j] = false;
            }
        }
    }
    std::vector<IndexSet> result;
    std::vector<bool> placed(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        if (placed[i]) continue;
        IndexSet block;
        for (std::size_t j = i; j < m; ++j) {
            if (together[i][j]) {
                block.push_back(j);
                placed[j] = true;
            }
        }
        result.push_back(std::move(block));
    }
    return result;
}

// Direct check of the overlapping-decomposition property on sign strings.
bool brute_iod(const Agenda& a, std::uint64_t first, std::uint64_t second) {
    return oracle::iod_glue_closed(a, first, second);
}

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& names, int depth) {
    std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(names.size()) - 1);
    std::uniform_int_distribution<int> pick_kind(0, depth <= 0 ? 0 : 5);
    switch (pick_kind(rng)) {
    case 1: return Formula::negation(random_formula(rng, names, depth - 1));
    case 2:
        return Formula::conjunction(random_formula(rng, names, depth - 1),
                                    random_formula(rng, names, depth - 1));
    case 3:
        return Formula::disjunction(random_formula(rng, names, depth - 1),
                                    random_formula(rng, names, depth - 1));
    case 4:
        return Formula::implication(random_formula(rng, names, depth - 1),
                                    random_formula(rng, names, depth - 1));
    case 5:
        return Formula::biconditional(random_formula(rng, names, depth - 1),
                                      random_formula(rng, names, depth - 1));
    default: return Formula::atom(names[static_cast<std::size_t>(pick_atom(rng))]);
    }
}

Agenda random_agenda(std::mt19937& rng) {
    static const std::vector<std::string> names{"x", "y", "z"};
    std::uniform_int_distribution<int> pick_m(2, 4);
    std::uniform_int_distribution<int> with_constraint(0, 3);
    for (;;) {
        int m = pick_m(rng);
        std::vector<Formula> preagenda;
        for (int i = 0; i < m; ++i) preagenda.push_back(random_formula(rng, names, 2));
        Formula gamma = with_constraint(rng) == 0 ? random_formula(rng, names, 2)
                                                  : Formula::verum();
        try {
            return Agenda(std::move(preagenda), gamma);
        } catch (const std::invalid_argument&) {
        }
    }
}

} // namespace

TEST_CASE("syntactic components group issues by shared atoms") {
    CHECK(syntactic_components(fixtures::f1_agenda()) ==
          std::vector<IndexSet>{{0, 1, 2}, {3}});
    CHECK(syntactic_components(fixtures::f4_agenda()) == std::vector<IndexSet>{{0}, {1}});
    CHECK(syntactic_components(fixtures::f3_agenda()) == std::vector<IndexSet>{{0, 1}});
    CHECK(syntactic_components(fixtures::pref3_agenda()) ==
          std::vector<IndexSet>{{0, 1, 2}});

    // A real constraint may couple issues regardless of their atoms.
    Agenda constrained({parse_formula("a"), parse_formula("b")}, parse_formula("a | b"));
    CHECK(syntactic_components(constrained) == std::vector<IndexSet>{{0, 1}});
}

TEST_CASE("structural independence requires disjoint atoms and no constraint") {
    Agenda f1 = fixtures::f1_agenda();
    CHECK(is_syntactically_independent(f1, std::vector<IndexSet>{{0, 1, 2}, {3}}));
    CHECK(!is_syntactically_independent(f1, std::vector<IndexSet>{{0, 1}, {2, 3}}));
    // Semantically independent but sharing the atom x.
    CHECK(!is_syntactically_independent(fixtures::f3_agenda(),
                                        std::vector<IndexSet>{{0}, {1}}));

    Agenda constrained({parse_formula("a"), parse_formula("b")}, parse_formula("a | b"));
    CHECK(!is_syntactically_independent(constrained, std::vector<IndexSet>{{0}, {1}}));

    CHECK_THROWS_AS(is_syntactically_independent(f1, std::vector<IndexSet>{{0, 1}, {1, 2, 3}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_syntactically_independent(f1, std::vector<IndexSet>{{0, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_syntactically_independent(f1, std::vector<IndexSet>{}),
                    std::invalid_argument);
}

TEST_CASE("semantic partition independence") {
    Agenda f1 = fixtures::f1_agenda();
    CHECK(is_independent_partition(f1, std::vector<IndexSet>{{0, 1, 2}, {3}}));
    CHECK(!is_independent_partition(f1, std::vector<IndexSet>{{0, 1}, {2, 3}}));
    CHECK(!is_independent_partition(f1, std::vector<IndexSet>{{0}, {1, 2, 3}}));
    CHECK(is_independent_partition(f1, std::vector<IndexSet>{{0, 1, 2, 3}}));

    // The biconditional couples the issues syntactically but not semantically.
    CHECK(is_independent_partition(fixtures::f3_agenda(), std::vector<IndexSet>{{0}, {1}}));
    CHECK(is_independent_partition(fixtures::f4_agenda(), std::vector<IndexSet>{{0}, {1}}));
    CHECK(is_independent_partition(fixtures::iod_agenda(), std::vector<IndexSet>{{0, 1}, {2}}));
    CHECK(!is_independent_partition(fixtures::pref3_agenda(),
                                    std::vector<IndexSet>{{0}, {1, 2}}));
}

TEST_CASE("overlapping decomposition checker") {
    CHECK(is_iod(fixtures::f2_agenda(), fixtures::f2_block_a1(), fixtures::f2_block_a2()));
    CHECK(is_iod(fixtures::iod_agenda(), {0, 1}, {1, 2}));
    // Extending one side of an independent partition with shared issues
    // keeps the glue property.
    CHECK(is_iod(fixtures::f1_agenda(), {0, 1, 2}, {2, 3}));
    CHECK(is_iod(fixtures::f1_agenda(), {0, 1, 2}, {3}));
    // Overlap on q alone does not shield p & q from the q chosen outside.
    CHECK(!is_iod(fixtures::f1_agenda(), {0, 1}, {1, 2, 3}));

    CHECK_THROWS_AS(is_iod(fixtures::f1_agenda(), {0, 1}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(is_iod(fixtures::f1_agenda(), {0, 1, 2, 3}, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(is_iod(fixtures::f1_agenda(), {0, 1}, {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("finest independent partition on the fixture agendas") {
    CHECK(find_finest_independent_partition(fixtures::f1_agenda()) ==
          std::vector<IndexSet>{{0, 1, 2}, {3}});
    CHECK(find_finest_independent_partition(fixtures::f3_agenda()) ==
          std::vector<IndexSet>{{0}, {1}});
    CHECK(find_finest_independent_partition(fixtures::f4_agenda()) ==
          std::vector<IndexSet>{{0}, {1}});
    CHECK(find_finest_independent_partition(fixtures::iod_agenda()) ==
          std::vector<IndexSet>{{0, 1}, {2}});
    // Preference agendas and the eight-issue example do not decompose.
    CHECK(find_finest_independent_partition(fixtures::pref3_agenda()) ==
          std::vector<IndexSet>{{0, 1, 2}});
    CHECK(find_finest_independent_partition(fixtures::f2_agenda()) ==
          std::vector<IndexSet>{{0, 1, 2, 3, 4, 5, 6, 7}});

    Limits tiny;
    tiny.max_partition_issues = 2;
    CHECK_THROWS_AS(find_finest_independent_partition(fixtures::f1_agenda(), tiny),
                    ResourceLimitError);
}

TEST_CASE("independent overlapping decompositions are found or ruled out") {
    auto f2 = find_iod(fixtures::f2_agenda());
    REQUIRE(f2.has_value());
    CHECK(is_iod(fixtures::f2_agenda(), f2->first, f2->second));

    auto iod = find_iod(fixtures::iod_agenda());
    REQUIRE(iod.has_value());
    CHECK(is_iod(fixtures::iod_agenda(), iod->first, iod->second));

    // Three alternatives: every pair of order issues shares an alternative,
    // so no transitivity triangle can be split and no proper bipartition
    // glues consistently.
    CHECK(!find_iod(fixtures::pref3_agenda()).has_value());

    // Four alternatives: the issues over {x1,x2} and over {x3,x4} share no
    // alternative, so dropping one from each side leaves every transitivity
    // triangle whole inside a block. {all but x3Px4} / {all but x1Px2} glues
    // two locally acyclic tournaments into a linear order every time.
    Agenda pref4 = jagg::make_preference_agenda(4);
    auto mask = [](const IndexSet& block) {
        std::uint64_t m = 0;
        for (std::size_t i : block) m |= 1ULL << i;
        return m;
    };
    CHECK(is_iod(pref4, {0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}));
    CHECK(brute_iod(pref4, mask({0, 1, 2, 3, 4}), mask({1, 2, 3, 4, 5})));
    auto p4 = find_iod(pref4);
    REQUIRE(p4.has_value());
    CHECK(brute_iod(pref4, mask(p4->first), mask(p4->second)));

    Limits tiny;
    tiny.max_iod_candidates = 10;
    CHECK_THROWS_AS(find_iod(fixtures::f1_agenda(), tiny), ResourceLimitError);
}

TEST_CASE("searches agree with first-principles enumeration on random agendas") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        Agenda a = random_agenda(rng);
        CAPTURE(trial);

        std::vector<IndexSet> finest = find_finest_independent_partition(a);
        CHECK(finest == brute_finest_partition(a));
        CHECK(is_independent_partition(a, finest));

        // Existence of an overlapping decomposition, checked by trying every
        // covering pair of proper sub-agendas directly.
        bool exists = false;
        const std::uint64_t full = (1ULL << a.size()) - 1ULL;
        for (std::uint64_t first = 1; first < full && !exists; ++first) {
            for (std::uint64_t second = 1; second < full && !exists; ++second) {
                if ((first | second) != full) continue;
                exists = brute_iod(a, first, second);
            }
        }
        auto found = find_iod(a);
        CHECK(found.has_value() == exists);
        if (found.has_value()) {
            CHECK(is_iod(a, found->first, found->second));
        }
    }
}

TEST_CASE("certified decomposition factories validate their certificates") {
    Agenda f1 = fixtures::f1_agenda();

    Decomposition t = Decomposition::trivial(f1);
    CHECK(t.kind() == DecompositionKind::Trivial);
    CHECK(t.is_trivial());
    CHECK(t.blocks().size() == 1);
    CHECK(t.blocks()[0] == IndexSet{0, 1, 2, 3});
    CHECK(t.overlap().empty());

    Decomposition part = Decomposition::certified_partition(f1, {{3}, {0, 1, 2}});
    CHECK(part.kind() == DecompositionKind::Partition);
    CHECK(part.blocks().size() == 2);
    CHECK(part.blocks()[0] == IndexSet{0, 1, 2});
    CHECK(part.blocks()[1] == IndexSet{3});
    CHECK_THROWS_AS(Decomposition::certified_partition(f1, {{0, 1}, {2, 3}}),
                    std::invalid_argument);
    CHECK(Decomposition::certified_partition(f1, {{0, 1, 2, 3}}).is_trivial());

    Decomposition syn = Decomposition::certified_syntactic(f1, {{0, 1, 2}, {3}});
    CHECK(syn.kind() == DecompositionKind::Partition);
    CHECK_THROWS_AS(Decomposition::certified_syntactic(fixtures::f3_agenda(), {{0}, {1}}),
                    std::invalid_argument);

    Decomposition iod = Decomposition::certified_iod(fixtures::f2_agenda(),
                                                     fixtures::f2_block_a1(),
                                                     fixtures::f2_block_a2());
    CHECK(iod.kind() == DecompositionKind::Overlapping);
    CHECK(iod.overlap() == IndexSet{3, 4});
    CHECK_THROWS_AS(Decomposition::certified_iod(f1, {0, 1}, {1, 2, 3}), std::invalid_argument);

    CHECK(to_string(DecompositionKind::Trivial) == "trivial");
    CHECK(to_string(DecompositionKind::Partition) == "partition");
    CHECK(to_string(DecompositionKind::Overlapping) == "overlapping");
}

TEST_CASE("blockwise aggregation over an independent partition") {
    Agenda a = fixtures::f1_agenda();
    Profile p = fixtures::f1_profile();
    Decomposition d = Decomposition::certified_partition(a, {{0, 1, 2}, {3}});

    // Rules for which blockwise and direct evaluation agree here.
    for (RuleId rule : {RuleId::Mc, RuleId::Mcc, RuleId::Ra, RuleId::Med, RuleId::FullH}) {
        CHECK(oracle::same_outputs(aggregate_via_decomposition(rule, d, p),
                                   apply_rule(rule, a, p)));
    }

    // The max-distance rule differs: blockwise it keeps all three block
    // outcomes crossed with both stances on the free issue, directly it
    // settles on a single compromise.
    std::vector<JudgmentSet> blockwise = aggregate_via_decomposition(RuleId::RMax, d, p);
    CHECK(strings_of(blockwise) ==
          std::vector<std::string>{"++++", "+++-", "+--+", "+---", "-+-+", "-+--"});
    CHECK(strings_of(rule_rmax(a, p)) == std::vector<std::string>{"-+-+"});

    // Trivial decomposition is direct evaluation.
    CHECK(oracle::same_outputs(
        aggregate_via_decomposition(RuleId::RMax, Decomposition::trivial(a), p),
        rule_rmax(a, p)));

    CHECK_THROWS_AS(aggregate_via_decomposition(RuleId::Mc, d, fixtures::f4_profile()),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate_via_decomposition(BlockRule{}, d, p), std::invalid_argument);
}

TEST_CASE("blockwise aggregation over an overlapping decomposition") {
    Agenda a = fixtures::f2_agenda();
    Profile p = fixtures::f2_profile();
    Decomposition d = Decomposition::certified_iod(a, fixtures::f2_block_a1(),
                                                   fixtures::f2_block_a2());

    // The subset-maximal rule's block outcomes disagree on the shared issues
    // here, so only the agreeing pairs survive recombination: a strict subset
    // of the direct outcome.
    std::vector<std::string> direct = strings_of(rule_mc(a, p));
    CHECK(direct ==
          std::vector<std::string>{"++++++++", "++-+-++-", "++-+--++", "+-+-++-+",
                                   "+-+-+-++", "+----+--", "+-----++", "-+++-++-",
                                   "-++-++-+", "-++--+--", "-++---++"});
    std::vector<std::string> glued =
        strings_of(aggregate_via_decomposition(RuleId::Mc, d, p));
    CHECK(glued ==
          std::vector<std::string>{"++++++++", "++-+-++-", "+-+-++-+", "+----+--",
                                   "+-----++", "-++--+--", "-++---++"});
    CHECK(std::ranges::includes(direct, glued));

    // The max-cardinality rule yields a single outcome per block and the two
    // outcomes agree on the shared issues, yet their union misses one of the
    // two direct outcomes: recombination can lose solutions even when every
    // block is decided.
    CHECK(strings_of(rule_mcc(a, p)) ==
          std::vector<std::string>{"++++++++", "-++---++"});
    CHECK(strings_of(aggregate_via_decomposition(RuleId::Mcc, d, p)) ==
          std::vector<std::string>{"-++---++"});

    // A custom block rule whose outcomes disagree on the shared issues
    // recombines to nothing.
    BlockRule stubborn = [](const Agenda& sub, const Profile&, const Limits&) {
        bool first = sub.issue(0) == parse_formula("p");
        return std::vector<JudgmentSet>{judgment_from_string(sub, first ? "+++++" : "--+--")};
    };
    CHECK(aggregate_via_decomposition(stubborn, d, p).empty());

    // Only the agreeing combinations survive the recombination.
    BlockRule picky = [](const Agenda& sub, const Profile&, const Limits&) {
        bool first = sub.issue(0) == parse_formula("p");
        std::vector<JudgmentSet> out;
        if (first) {
            out.push_back(judgment_from_string(sub, "+++++"));
            out.push_back(judgment_from_string(sub, "-++--"));
        } else {
            out.push_back(judgment_from_string(sub, "---++"));
        }
        return out;
    };
    CHECK(strings_of(aggregate_via_decomposition(picky, d, p)) ==
          std::vector<std::string>{"-++---++"});
}
