#pragma once

#include <cstddef>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/limits.hpp"

namespace jagg {

// A set of preagenda indices. Operations taking an IndexSet expect indices
// in range; duplicates are rejected and order is normalized to ascending.
using IndexSet = std::vector<std::size_t>;

// Returns `block` sorted ascending; throws std::invalid_argument on
// duplicates, out-of-range indices, or an empty set.
IndexSet normalize_block(IndexSet block, std::size_t agenda_size);

// All complete constraint-consistent judgment sets over `a` (the set J_A),
// in canonical order (position-by-position, Positive before Negative).
// Distinct models that induce the same sign vector collapse to one entry.
std::vector<JudgmentSet> enumerate_consistent_complete(const Agenda& a, const Limits& limits = {});

// Exact acceptance counts per issue.
SupportTable support(const Profile& p);

// The (possibly partial) majority set m(P): issue i is Positive when a
// strict majority accepts phi_i, Negative when a strict majority accepts
// ~phi_i, and Absent on an exact tie (possible only for even n).
JudgmentSet majority_set(const Profile& p);

// True iff the assigned part of majority_set(p) is consistent with the
// constraint.
bool is_majority_consistent(const Profile& p, const Limits& limits = {});

// Sub-agenda induced by `block`: the selected preagenda entries in their
// original order, same constraint.
Agenda restrict_agenda(const Agenda& a, const IndexSet& block);

// Restriction of a judgment set / profile to a sub-agenda.
JudgmentSet restrict_judgment(const JudgmentSet& j, const IndexSet& block);
Profile restrict_profile(const Profile& p, const IndexSet& block);

// All complete consistent extensions of a partial judgment set. Requires
// the assigned part to be consistent (std::invalid_argument otherwise).
// ext of a complete consistent set is that set alone.
std::vector<JudgmentSet> ext(const JudgmentSet& partial, const Limits& limits = {});

// All subset-maximal consistent subsets of the assigned part of `s`,
// returned as partial judgment sets over the same agenda. For an assigned
// part that is already consistent this is `s` itself.
std::vector<JudgmentSet> maximal_consistent_subsets(const JudgmentSet& s,
                                                    const Limits& limits = {});

// The consistent subsets of maximum cardinality (a subset of the maximal
// ones).
std::vector<JudgmentSet> maxcard_consistent_subsets(const JudgmentSet& s,
                                                    const Limits& limits = {});

// Hamming distance between two complete judgment sets over the same agenda
// (number of issues on which they differ). Throws std::invalid_argument on
// agenda mismatch or incomplete input.
int hamming(const JudgmentSet& a, const JudgmentSet& b);

// Sum of member-wise Hamming distances between two equal-size profiles over
// the same agenda.
long long profile_distance(const Profile& p, const Profile& q);

// The preference agenda for `alternatives` candidates: one atom P_i_j per
// pair 1 <= i < j <= alternatives (preagenda in lexicographic pair order),
// with the transitivity constraint over all ordered triples. Complete
// consistent judgment sets over it correspond one-to-one to strict linear
// orders, so enumerate_consistent_complete yields alternatives! sets.
Agenda make_preference_agenda(int alternatives, const Limits& limits = {});

} // namespace jagg
