#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/limits.hpp"

namespace jagg {

// The aggregation rules. All of them are irresolute: they map a profile to a
// non-empty set of complete consistent judgment sets, returned in canonical
// order (position-by-position, Positive before Negative) without duplicates.
// Every rule validates that the profile is over the agenda argument.
enum class RuleId { Mc, Mcc, Ra, RMax, Med, Rev, FullH };

std::string to_string(RuleId rule);
std::optional<RuleId> parse_rule_id(std::string_view text);
std::vector<RuleId> all_rule_ids();

// Exact score arithmetic; no floating point anywhere.
using Score = boost::rational<long long>;

// A signed issue relative to some agenda: (index, true) stands for phi_index
// and (index, false) for its negation.
struct SignedIssue {
    std::size_t index;
    bool positive;
};

// Scoring functions assign a non-negative score to a signed issue from the
// point of view of one complete judgment set. They must be meaningful for
// any agenda (they are applied to sub-agendas during separability checks).
using ScoringFunction = std::function<Score(const JudgmentSet&, SignedIssue)>;

// 1 when the judgment set accepts the signed issue, else 0.
Score score_med(const JudgmentSet& j, SignedIssue issue);

// Minimal number of issue reversals that turn j into a complete consistent
// set rejecting the signed issue; 0 whenever j already rejects it.
Score score_rev(const JudgmentSet& j, SignedIssue issue, const Limits& limits = {});

// Maximal-consistent-subset rule: completions of the subset-maximal
// consistent subsets of the majority set.
std::vector<JudgmentSet> rule_mc(const Agenda& a, const Profile& p, const Limits& limits = {});

// Maxcard variant: completions of the maximum-cardinality consistent
// subsets of the majority set.
std::vector<JudgmentSet> rule_mcc(const Agenda& a, const Profile& p, const Limits& limits = {});

// Ranked-agenda rule: greedy acceptance of signed issues along every order
// compatible with descending support. Orders differing only inside
// equal-support tie blocks can produce different outcomes; all of them are
// returned. Throws ResourceLimitError when the tie-block search exceeds
// limits.max_ra_orders states.
std::vector<JudgmentSet> rule_ra(const Agenda& a, const Profile& p, const Limits& limits = {});

// Minimises the maximum Hamming distance to the profile members.
std::vector<JudgmentSet> rule_rmax(const Agenda& a, const Profile& p, const Limits& limits = {});

// Generic scoring rule: maximises the summed score over all members and all
// signed issues of the candidate set.
std::vector<JudgmentSet> rule_scoring(const Agenda& a, const Profile& p,
                                      const ScoringFunction& s, const Limits& limits = {});

// Median rule: maximises total support, equivalently minimises the summed
// Hamming distance to the profile. Both characterisations are computed and
// cross-checked on every call.
std::vector<JudgmentSet> rule_med(const Agenda& a, const Profile& p, const Limits& limits = {});

// Full-Hamming rule: completions of the majority sets of the
// majority-consistent profiles closest to p in summed Hamming distance.
// Exact search over J_A^n with branch and bound; throws ResourceLimitError
// when |J_A|^n exceeds limits.max_full_h_states.
std::vector<JudgmentSet> rule_full_h(const Agenda& a, const Profile& p, const Limits& limits = {});

// Dispatch by rule id (Rev routes through rule_scoring with score_rev).
std::vector<JudgmentSet> apply_rule(RuleId rule, const Agenda& a, const Profile& p,
                                    const Limits& limits = {});

// A strict total priority order over complete judgment sets, used to make a
// rule resolute. `prefers(a, b)` is true when a has strictly higher priority.
class TieBreaker {
public:
    using Priority = std::function<bool(const JudgmentSet&, const JudgmentSet&)>;

    // Position-by-position comparison in preagenda order, preferring the
    // given sign at the first disagreement. The default prefers Positive.
    static TieBreaker lexicographic(Sign preferred = Sign::Positive);

    // Arbitrary strict total order supplied by the caller.
    static TieBreaker from_priority(Priority higher);

    bool prefers(const JudgmentSet& a, const JudgmentSet& b) const;

private:
    explicit TieBreaker(Priority higher);
    Priority higher_;
};

// The unique maximum of `outputs` under the tie-breaker's priority order.
// Throws std::invalid_argument on an empty span or mixed agendas.
JudgmentSet apply_tiebreak(std::span<const JudgmentSet> outputs, const TieBreaker& tiebreak);

} // namespace jagg
