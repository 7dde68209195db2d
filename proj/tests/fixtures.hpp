#pragma once

// Shared example instances used across the test suites.

#include <string>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/formula.hpp"

namespace fixtures {

// Doctrinal-paradox style agenda (p, q, p & q, t) with an unconstrained
// domain and three individuals; the majority set is inconsistent.
inline jagg::Agenda f1_agenda() {
    using jagg::parse_formula;
    return jagg::Agenda({parse_formula("p"), parse_formula("q"), parse_formula("p & q"),
                         parse_formula("t")});
}

inline jagg::Profile f1_profile() {
    std::vector<std::string> rows{"++++", "+--+", "-+--"};
    return jagg::profile_from_strings(f1_agenda(), rows);
}

inline jagg::IndexSet f1_block_a1() { return {0, 1, 2}; }
inline jagg::IndexSet f1_block_a2() { return {3}; }

// Eight-issue agenda over p,q,r,s whose two overlapping five-issue blocks
// share q and r; three individuals.
inline jagg::Agenda f2_agenda() {
    using jagg::parse_formula;
    return jagg::Agenda({parse_formula("p"), parse_formula("p -> q"), parse_formula("p -> r"),
                         parse_formula("q"), parse_formula("r"), parse_formula("s"),
                         parse_formula("s -> q"), parse_formula("s -> r")});
}

inline jagg::Profile f2_profile() {
    std::vector<std::string> rows{"++++++++", "-++---++", "+----+--"};
    return jagg::profile_from_strings(f2_agenda(), rows);
}

inline jagg::IndexSet f2_block_a1() { return {0, 1, 2, 3, 4}; }
inline jagg::IndexSet f2_block_a2() { return {3, 4, 5, 6, 7}; }

// Two-issue agenda (x, x <-> y): the blocks {x} and {x <-> y} partition it
// even though the issues share the atom x.
inline jagg::Agenda f3_agenda() {
    using jagg::parse_formula;
    return jagg::Agenda({parse_formula("x"), parse_formula("x <-> y")});
}

// Two independent issues (a, b) with a two-member profile that ties both.
inline jagg::Agenda f4_agenda() {
    using jagg::parse_formula;
    return jagg::Agenda({parse_formula("a"), parse_formula("b")});
}

inline jagg::Profile f4_profile() {
    std::vector<std::string> rows{"++", "--"};
    return jagg::profile_from_strings(f4_agenda(), rows);
}

// Three-issue overlapping-decomposition example: (p, ~p | t, p <-> q) with
// blocks {0,1} and {1,2}.
inline jagg::Agenda iod_agenda() {
    using jagg::parse_formula;
    return jagg::Agenda({parse_formula("p"), parse_formula("~p | t"), parse_formula("p <-> q")});
}

inline jagg::Agenda pref3_agenda() { return jagg::make_preference_agenda(3); }

} // namespace fixtures
