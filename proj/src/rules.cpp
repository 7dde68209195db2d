#include "jagg/rules.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "agenda_context.hpp"
#include "jagg/errors.hpp"

namespace jagg {

namespace {

void require_profile_over(const Agenda& a, const Profile& p) {
    if (!(a == p.agenda())) {
        throw std::invalid_argument("profile is over a different agenda");
    }
}

std::vector<JudgmentSet> canonical_output(std::vector<JudgmentSet> sets) {
    std::sort(sets.begin(), sets.end(), JudgmentSet::sign_less);
    sets.erase(std::unique(sets.begin(), sets.end(),
                           [](const JudgmentSet& a, const JudgmentSet& b) { return a == b; }),
               sets.end());
    if (sets.empty()) {
        throw std::logic_error("aggregation produced no judgment sets");
    }
    return sets;
}

std::vector<JudgmentSet> masks_to_output(const detail::AgendaContext& ctx,
                                         std::vector<std::uint64_t> masks) {
    masks = detail::canonicalize_masks(std::move(masks), ctx.issue_count());
    if (masks.empty()) {
        throw std::logic_error("aggregation produced no judgment sets");
    }
    return ctx.to_judgment_sets(masks);
}

} // namespace

// ---------------------------------------------------------------------------
// Rule ids
// ---------------------------------------------------------------------------

std::string to_string(RuleId rule) {
    switch (rule) {
    case RuleId::Mc: return "mc";
    case RuleId::Mcc: return "mcc";
    case RuleId::Ra: return "ra";
    case RuleId::RMax: return "rmax";
    case RuleId::Med: return "med";
    case RuleId::Rev: return "rev";
    case RuleId::FullH: return "full_h";
    }
    throw std::logic_error("unknown rule id");
}

std::optional<RuleId> parse_rule_id(std::string_view text) {
    for (RuleId rule : all_rule_ids()) {
        if (text == to_string(rule)) return rule;
    }
    return std::nullopt;
}

std::vector<RuleId> all_rule_ids() {
    return {RuleId::Mc,  RuleId::Mcc, RuleId::Ra,   RuleId::RMax,
            RuleId::Med, RuleId::Rev, RuleId::FullH};
}

// ---------------------------------------------------------------------------
// Scoring functions
// ---------------------------------------------------------------------------

namespace {

Sign issue_sign(SignedIssue issue) { return issue.positive ? Sign::Positive : Sign::Negative; }

void require_issue_in(const JudgmentSet& j, SignedIssue issue) {
    if (issue.index >= j.size()) {
        throw std::invalid_argument("signed issue index out of range");
    }
    if (!j.is_complete()) {
        throw std::invalid_argument("scoring requires a complete judgment set");
    }
}

} // namespace

Score score_med(const JudgmentSet& j, SignedIssue issue) {
    require_issue_in(j, issue);
    return j.at(issue.index) == issue_sign(issue) ? Score(1) : Score(0);
}

Score score_rev(const JudgmentSet& j, SignedIssue issue, const Limits& limits) {
    require_issue_in(j, issue);
    detail::AgendaContext ctx(j.agenda(), limits);
    const std::uint64_t self = detail::AgendaContext::mask_of(j);
    const std::uint64_t bit = 1ULL << issue.index;
    int best = std::numeric_limits<int>::max();
    for (std::uint64_t mask : ctx.all()) {
        // Keep only the complete consistent sets rejecting the signed issue.
        bool rejects = ((mask & bit) != 0) != issue.positive;
        if (!rejects) continue;
        best = std::min(best, std::popcount(mask ^ self));
    }
    if (best == std::numeric_limits<int>::max()) {
        // Unreachable for a valid agenda: every issue is refutable, so some
        // complete consistent set rejects it.
        throw std::logic_error("no consistent judgment set rejects the issue");
    }
    return Score(best);
}

// ---------------------------------------------------------------------------
// Majority-set based rules
// ---------------------------------------------------------------------------

namespace {

std::vector<JudgmentSet> completions_of_subsets(const std::vector<JudgmentSet>& subsets,
                                                const Limits& limits) {
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& sub : subsets) {
        for (JudgmentSet& e : ext(sub, limits)) {
            out.push_back(std::move(e));
        }
    }
    return canonical_output(std::move(out));
}

} // namespace

std::vector<JudgmentSet> rule_mc(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    JudgmentSet m = majority_set(p);
    return completions_of_subsets(maximal_consistent_subsets(m, limits), limits);
}

std::vector<JudgmentSet> rule_mcc(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    JudgmentSet m = majority_set(p);
    return completions_of_subsets(maxcard_consistent_subsets(m, limits), limits);
}

// ---------------------------------------------------------------------------
// Ranked agenda
// ---------------------------------------------------------------------------

namespace {

// One signed issue inside the support ranking.
struct RankedEntry {
    std::size_t issue;
    bool positive;
};

// The outcomes reachable by greedy acceptance over one equal-support tie
// block, starting from the partial state (assigned, signs), are exactly the
// completions by subset-maximal consistent additions from that block: for
// any processing order the accepted set is consistent and no skipped element
// can be added consistently afterwards, and conversely every maximal
// addition set is realised by the order listing it first. The search below
// therefore branches over maximal addition sets instead of permutations.
class RankedAgendaSearch {
public:
    RankedAgendaSearch(const detail::AgendaContext& ctx,
                       std::vector<std::vector<RankedEntry>> blocks, long long state_cap)
        : ctx_(ctx), blocks_(std::move(blocks)), budget_(state_cap) {}

    std::vector<std::uint64_t> run() {
        descend(0, 0, 0);
        return std::move(results_);
    }

private:
    const detail::AgendaContext& ctx_;
    std::vector<std::vector<RankedEntry>> blocks_;
    long long budget_;
    std::vector<std::uint64_t> results_;

    void spend() {
        if (--budget_ < 0) {
            throw ResourceLimitError("ranked-agenda tie-block search exceeded its state budget");
        }
    }

    void descend(std::size_t block_index, std::uint64_t assigned, std::uint64_t signs) {
        spend();
        if (block_index == blocks_.size()) {
            // Every issue is decided by now: for each issue, once both of
            // its entries have been processed, consistency pins one side.
            if (assigned != ctx_.full_mask()) {
                throw std::logic_error("ranked-agenda search ended on a partial state");
            }
            results_.push_back(signs);
            return;
        }

        // Entries of this block still open and individually consistent with
        // the current state. Entries on already-decided issues can never be
        // added (the opposite side is in), and dropping them here preserves
        // the reachable outcomes.
        std::vector<RankedEntry> open;
        for (const RankedEntry& e : blocks_[block_index]) {
            if ((assigned >> e.issue) & 1ULL) continue;
            open.push_back(e);
        }
        if (open.size() > 20) {
            throw ResourceLimitError("ranked-agenda tie block too large to search");
        }

        for (std::uint64_t addition : maximal_additions(open, assigned, signs)) {
            std::uint64_t next_assigned = assigned;
            std::uint64_t next_signs = signs;
            apply_addition(open, addition, next_assigned, next_signs);
            descend(block_index + 1, next_assigned, next_signs);
        }
    }

    // Subsets of `open` (as bitmasks over its positions) that can be added
    // consistently and are subset-maximal with that property.
    std::vector<std::uint64_t> maximal_additions(const std::vector<RankedEntry>& open,
                                                 std::uint64_t assigned, std::uint64_t signs) {
        const std::size_t k = open.size();
        std::vector<std::uint64_t> maximal;
        std::vector<std::vector<std::uint64_t>> by_size(k + 1);
        for (std::uint64_t sub = 0; sub < (1ULL << k); ++sub) {
            by_size[static_cast<std::size_t>(std::popcount(sub))].push_back(sub);
        }
        for (std::size_t size = k + 1; size-- > 0;) {
            for (std::uint64_t sub : by_size[size]) {
                spend();
                bool contained = false;
                for (std::uint64_t m : maximal) {
                    if ((sub & m) == sub) {
                        contained = true;
                        break;
                    }
                }
                if (contained) continue;
                std::uint64_t next_assigned = assigned;
                std::uint64_t next_signs = signs;
                if (!try_apply(open, sub, next_assigned, next_signs)) continue;
                if (ctx_.partial_consistent(next_assigned, next_signs)) {
                    maximal.push_back(sub);
                }
            }
        }
        return maximal;
    }

    // Returns false when the subset asks for both sides of one issue.
    static bool try_apply(const std::vector<RankedEntry>& open, std::uint64_t sub,
                          std::uint64_t& assigned, std::uint64_t& signs) {
        for (std::size_t t = 0; t < open.size(); ++t) {
            if (!((sub >> t) & 1ULL)) continue;
            std::uint64_t bit = 1ULL << open[t].issue;
            if (assigned & bit) return false;
            assigned |= bit;
            if (open[t].positive) signs |= bit;
        }
        return true;
    }

    static void apply_addition(const std::vector<RankedEntry>& open, std::uint64_t sub,
                               std::uint64_t& assigned, std::uint64_t& signs) {
        if (!try_apply(open, sub, assigned, signs)) {
            throw std::logic_error("maximal addition set was not applicable");
        }
    }
};

} // namespace

std::vector<JudgmentSet> rule_ra(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    detail::AgendaContext ctx(a, limits);
    SupportTable table = support(p);

    struct Keyed {
        RankedEntry entry;
        int count;
    };
    std::vector<Keyed> entries;
    for (std::size_t i = 0; i < a.size(); ++i) {
        entries.push_back({{i, true}, table.count(i, Sign::Positive)});
        entries.push_back({{i, false}, table.count(i, Sign::Negative)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Keyed& x, const Keyed& y) { return x.count > y.count; });

    std::vector<std::vector<RankedEntry>> blocks;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i == 0 || entries[i - 1].count != entries[i].count) {
            blocks.emplace_back();
        }
        blocks.back().push_back(entries[i].entry);
    }

    RankedAgendaSearch search(ctx, std::move(blocks), limits.max_ra_orders);
    return masks_to_output(ctx, search.run());
}

// ---------------------------------------------------------------------------
// Distance-based rules
// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> member_masks(const Profile& p) {
    std::vector<std::uint64_t> out;
    out.reserve(p.size());
    for (const JudgmentSet& j : p.members()) {
        out.push_back(detail::AgendaContext::mask_of(j));
    }
    return out;
}

} // namespace

std::vector<JudgmentSet> rule_rmax(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    detail::AgendaContext ctx(a, limits);
    std::vector<std::uint64_t> members = member_masks(p);

    int best = std::numeric_limits<int>::max();
    std::vector<std::uint64_t> winners;
    for (std::uint64_t candidate : ctx.all()) {
        int worst = 0;
        for (std::uint64_t m : members) {
            worst = std::max(worst, std::popcount(candidate ^ m));
        }
        if (worst < best) {
            best = worst;
            winners.clear();
        }
        if (worst == best) winners.push_back(candidate);
    }
    return masks_to_output(ctx, std::move(winners));
}

std::vector<JudgmentSet> rule_scoring(const Agenda& a, const Profile& p,
                                      const ScoringFunction& s, const Limits& limits) {
    require_profile_over(a, p);
    detail::AgendaContext ctx(a, limits);

    Score best(-1);
    std::vector<std::uint64_t> winners;
    for (std::uint64_t candidate : ctx.all()) {
        Score total(0);
        for (const JudgmentSet& member : p.members()) {
            for (std::size_t i = 0; i < a.size(); ++i) {
                SignedIssue issue{i, ((candidate >> i) & 1ULL) != 0};
                Score value = s(member, issue);
                if (value < Score(0)) {
                    throw std::invalid_argument("scoring function returned a negative score");
                }
                total += value;
            }
        }
        if (total > best) {
            best = total;
            winners.clear();
        }
        if (total == best) winners.push_back(candidate);
    }
    return masks_to_output(ctx, std::move(winners));
}

std::vector<JudgmentSet> rule_med(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    detail::AgendaContext ctx(a, limits);
    std::vector<std::uint64_t> members = member_masks(p);
    SupportTable table = support(p);

    long long best_support = std::numeric_limits<long long>::min();
    std::vector<std::uint64_t> by_support;
    long long best_distance = std::numeric_limits<long long>::max();
    std::vector<std::uint64_t> by_distance;

    for (std::uint64_t candidate : ctx.all()) {
        long long support_total = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            bool positive = ((candidate >> i) & 1ULL) != 0;
            support_total += table.count(i, positive ? Sign::Positive : Sign::Negative);
        }
        if (support_total > best_support) {
            best_support = support_total;
            by_support.clear();
        }
        if (support_total == best_support) by_support.push_back(candidate);

        long long distance_total = 0;
        for (std::uint64_t m : members) distance_total += std::popcount(candidate ^ m);
        if (distance_total < best_distance) {
            best_distance = distance_total;
            by_distance.clear();
        }
        if (distance_total == best_distance) by_distance.push_back(candidate);
    }

    // The two characterisations are provably the same maximiser set
    // (summed distance = n*m - summed support); verify that on every call.
    if (by_support != by_distance) {
        throw std::logic_error("median rule: support and distance routes disagree");
    }
    return masks_to_output(ctx, std::move(by_support));
}

// ---------------------------------------------------------------------------
// Full-Hamming rule
// ---------------------------------------------------------------------------

// Iterative-deepening search for the majority-consistent profiles closest to
// p. Depth-first over members; each member is replaced by a candidate from
// J_A at known cost; at total budget d all leaves with cost exactly d are
// tested for majority consistency. The first budget with any hit yields the
// complete answer set, because cheaper profiles were all tested earlier.
std::vector<JudgmentSet> rule_full_h(const Agenda& a, const Profile& p, const Limits& limits) {
    require_profile_over(a, p);
    detail::AgendaContext ctx(a, limits);
    const std::size_t n = p.size();
    const std::size_t m = a.size();
    const std::vector<std::uint64_t>& candidates = ctx.all();

    // Static guard on the nominal search-space size.
    long long states = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (states > limits.max_full_h_states / static_cast<long long>(candidates.size())) {
            throw ResourceLimitError("full-Hamming search space exceeds the configured limit");
        }
        states *= static_cast<long long>(candidates.size());
    }
    if (states > limits.max_full_h_states) {
        throw ResourceLimitError("full-Hamming search space exceeds the configured limit");
    }

    std::vector<std::uint64_t> members = member_masks(p);

    // Per-member candidate lists sorted by replacement cost.
    struct Option {
        std::uint64_t mask;
        int cost;
    };
    std::vector<std::vector<Option>> options(n);
    for (std::size_t i = 0; i < n; ++i) {
        options[i].reserve(candidates.size());
        for (std::uint64_t c : candidates) {
            options[i].push_back({c, std::popcount(members[i] ^ c)});
        }
        std::stable_sort(options[i].begin(), options[i].end(),
                         [](const Option& x, const Option& y) { return x.cost < y.cost; });
    }

    // Upper bound: the best unanimous profile is majority-consistent.
    int bound = std::numeric_limits<int>::max();
    for (std::uint64_t c : candidates) {
        int total = 0;
        for (std::uint64_t m_mask : members) total += std::popcount(c ^ m_mask);
        bound = std::min(bound, total);
    }

    const int agents = static_cast<int>(n); // strict majority: 2*count > agents
    std::set<std::pair<std::uint64_t, std::uint64_t>> patterns;
    std::vector<int> positive_count(m, 0);

    // Depth-first walk at a fixed budget; leaves with cost == budget are the
    // new profiles of this deepening level.
    auto visit = [&](auto&& self, std::size_t member, int cost, int budget) -> void {
        if (member == n) {
            if (cost != budget) return;
            std::uint64_t assigned = 0;
            std::uint64_t signs = 0;
            for (std::size_t i = 0; i < m; ++i) {
                int pos = positive_count[i];
                if (2 * pos > agents) {
                    assigned |= 1ULL << i;
                    signs |= 1ULL << i;
                } else if (2 * (agents - pos) > agents) {
                    assigned |= 1ULL << i;
                }
            }
            if (ctx.partial_consistent(assigned, signs)) {
                patterns.insert({assigned, signs});
            }
            return;
        }
        for (const Option& opt : options[member]) {
            if (cost + opt.cost > budget) break; // sorted by cost
            for (std::size_t i = 0; i < m; ++i) {
                positive_count[i] += static_cast<int>((opt.mask >> i) & 1ULL);
            }
            self(self, member + 1, cost + opt.cost, budget);
            for (std::size_t i = 0; i < m; ++i) {
                positive_count[i] -= static_cast<int>((opt.mask >> i) & 1ULL);
            }
        }
    };

    for (int budget = 0; budget <= bound; ++budget) {
        patterns.clear();
        visit(visit, 0, 0, budget);
        if (!patterns.empty()) break;
    }
    if (patterns.empty()) {
        throw std::logic_error("full-Hamming search found no majority-consistent profile");
    }

    std::vector<std::uint64_t> winners;
    for (const auto& [assigned, signs] : patterns) {
        for (std::uint64_t e : ctx.extensions(assigned, signs)) {
            winners.push_back(e);
        }
    }
    return masks_to_output(ctx, std::move(winners));
}

// ---------------------------------------------------------------------------
// Dispatch and tie-breaking
// ---------------------------------------------------------------------------

namespace {

// Reversal scoring with a shared context and a memo table: equivalent to
// score_rev on the bound agenda, but avoids rebuilding the model list for
// every (member, issue) pair inside rule_scoring's loop.
ScoringFunction cached_rev_scoring(const Agenda& a, const Limits& limits) {
    auto ctx = std::make_shared<detail::AgendaContext>(a, limits);
    auto memo = std::make_shared<std::map<std::tuple<std::uint64_t, std::size_t, bool>, Score>>();
    Limits bound_limits = limits;
    return [ctx, memo, bound_limits](const JudgmentSet& j, SignedIssue issue) {
        if (!(j.agenda() == ctx->agenda())) {
            return score_rev(j, issue, bound_limits);
        }
        if (issue.index >= j.size() || !j.is_complete()) {
            return score_rev(j, issue, bound_limits); // delegate the error handling
        }
        const std::uint64_t self = detail::AgendaContext::mask_of(j);
        auto key = std::make_tuple(self, issue.index, issue.positive);
        if (auto it = memo->find(key); it != memo->end()) return it->second;
        const std::uint64_t bit = 1ULL << issue.index;
        int best = std::numeric_limits<int>::max();
        for (std::uint64_t mask : ctx->all()) {
            bool rejects = ((mask & bit) != 0) != issue.positive;
            if (!rejects) continue;
            best = std::min(best, std::popcount(mask ^ self));
        }
        if (best == std::numeric_limits<int>::max()) {
            throw std::logic_error("no consistent judgment set rejects the issue");
        }
        Score result(best);
        memo->emplace(key, result);
        return result;
    };
}

} // namespace

std::vector<JudgmentSet> apply_rule(RuleId rule, const Agenda& a, const Profile& p,
                                    const Limits& limits) {
    switch (rule) {
    case RuleId::Mc: return rule_mc(a, p, limits);
    case RuleId::Mcc: return rule_mcc(a, p, limits);
    case RuleId::Ra: return rule_ra(a, p, limits);
    case RuleId::RMax: return rule_rmax(a, p, limits);
    case RuleId::Med: return rule_med(a, p, limits);
    case RuleId::Rev: return rule_scoring(a, p, cached_rev_scoring(a, limits), limits);
    case RuleId::FullH: return rule_full_h(a, p, limits);
    }
    throw std::logic_error("unknown rule id");
}

TieBreaker::TieBreaker(Priority higher) : higher_(std::move(higher)) {
    if (!higher_) {
        throw std::invalid_argument("tie-breaker priority must be callable");
    }
}

TieBreaker TieBreaker::lexicographic(Sign preferred) {
    if (preferred == Sign::Absent) {
        throw std::invalid_argument("lexicographic tie-breaker needs Positive or Negative");
    }
    return TieBreaker([preferred](const JudgmentSet& a, const JudgmentSet& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (a.at(i) != b.at(i)) return a.at(i) == preferred;
        }
        return false;
    });
}

TieBreaker TieBreaker::from_priority(Priority higher) { return TieBreaker(std::move(higher)); }

bool TieBreaker::prefers(const JudgmentSet& a, const JudgmentSet& b) const {
    return higher_(a, b);
}

JudgmentSet apply_tiebreak(std::span<const JudgmentSet> outputs, const TieBreaker& tiebreak) {
    if (outputs.empty()) {
        throw std::invalid_argument("cannot tie-break an empty output set");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < outputs.size(); ++i) {
        if (!(outputs[i].agenda() == outputs[best].agenda())) {
            throw std::invalid_argument("tie-breaking across different agendas");
        }
        if (tiebreak.prefers(outputs[i], outputs[best])) best = i;
    }
    return outputs[best];
}

} // namespace jagg
