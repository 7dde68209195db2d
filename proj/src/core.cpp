#include "jagg/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "agenda_context.hpp"
#include "jagg/consistency.hpp"
#include "jagg/errors.hpp"

namespace jagg {

IndexSet normalize_block(IndexSet block, std::size_t agenda_size) {
    if (block.empty()) {
        throw std::invalid_argument("block must be non-empty");
    }
    std::sort(block.begin(), block.end());
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (block[i] >= agenda_size) {
            throw std::invalid_argument("block index " + std::to_string(block[i]) +
                                        " out of range for agenda of size " +
                                        std::to_string(agenda_size));
        }
        if (i > 0 && block[i] == block[i - 1]) {
            throw std::invalid_argument("block contains duplicate index " +
                                        std::to_string(block[i]));
        }
    }
    return block;
}

std::vector<JudgmentSet> enumerate_consistent_complete(const Agenda& a, const Limits& limits) {
    detail::AgendaContext ctx(a, limits);
    return ctx.to_judgment_sets(ctx.all());
}

SupportTable support(const Profile& p) {
    std::vector<int> positive(p.agenda().size(), 0);
    for (const JudgmentSet& j : p.members()) {
        for (std::size_t i = 0; i < positive.size(); ++i) {
            if (j.at(i) == Sign::Positive) ++positive[i];
        }
    }
    return SupportTable(std::move(positive), static_cast<int>(p.size()));
}

JudgmentSet majority_set(const Profile& p) {
    SupportTable table = support(p);
    const int n = table.agents();
    std::vector<Sign> signs(p.agenda().size(), Sign::Absent);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        int pos = table.count(i, Sign::Positive);
        if (2 * pos > n) {
            signs[i] = Sign::Positive;
        } else if (2 * (n - pos) > n) {
            signs[i] = Sign::Negative;
        } // exact tie: stays Absent
    }
    return JudgmentSet(p.agenda(), std::move(signs));
}

bool is_majority_consistent(const Profile& p, const Limits& limits) {
    JudgmentSet m = majority_set(p);
    return is_consistent(m.formulas(), p.agenda().constraint(), limits);
}

Agenda restrict_agenda(const Agenda& a, const IndexSet& block) {
    IndexSet b = normalize_block(block, a.size());
    std::vector<Formula> sub;
    sub.reserve(b.size());
    for (std::size_t i : b) sub.push_back(a.issue(i));
    return Agenda(std::move(sub), a.constraint());
}

JudgmentSet restrict_judgment(const JudgmentSet& j, const IndexSet& block) {
    IndexSet b = normalize_block(block, j.agenda().size());
    Agenda sub = restrict_agenda(j.agenda(), b);
    std::vector<Sign> signs;
    signs.reserve(b.size());
    for (std::size_t i : b) signs.push_back(j.at(i));
    return JudgmentSet(std::move(sub), std::move(signs));
}

Profile restrict_profile(const Profile& p, const IndexSet& block) {
    IndexSet b = normalize_block(block, p.agenda().size());
    Agenda sub = restrict_agenda(p.agenda(), b);
    std::vector<JudgmentSet> members;
    members.reserve(p.size());
    for (const JudgmentSet& j : p.members()) {
        std::vector<Sign> signs;
        signs.reserve(b.size());
        for (std::size_t i : b) signs.push_back(j.at(i));
        members.emplace_back(sub, std::move(signs));
    }
    return Profile(std::move(sub), std::move(members));
}

std::vector<JudgmentSet> ext(const JudgmentSet& partial, const Limits& limits) {
    detail::AgendaContext ctx(partial.agenda(), limits);
    auto [assigned, signs] = detail::AgendaContext::partial_of(partial);
    if (!ctx.partial_consistent(assigned, signs)) {
        throw std::invalid_argument("judgment set has an inconsistent assigned part");
    }
    return ctx.to_judgment_sets(ctx.extensions(assigned, signs));
}

namespace {

// Shared setup for the two subset operations: the assigned positions of the
// input set and its signs as an agenda-position mask.
struct SubsetSearch {
    const detail::AgendaContext& ctx;
    std::vector<std::size_t> positions; // assigned agenda positions
    std::uint64_t sign_mask;            // positive positions of s

    std::uint64_t to_agenda_mask(std::uint64_t submask) const {
        std::uint64_t out = 0;
        for (std::size_t t = 0; t < positions.size(); ++t) {
            if ((submask >> t) & 1ULL) out |= 1ULL << positions[t];
        }
        return out;
    }
};

constexpr std::size_t kMaxSubsetIssues = 22;

SubsetSearch make_subset_search(const JudgmentSet& s, const detail::AgendaContext& ctx) {
    SubsetSearch search{ctx, s.assigned_indices(), 0};
    if (search.positions.size() > kMaxSubsetIssues) {
        throw ResourceLimitError("consistent-subset search over " +
                                 std::to_string(search.positions.size()) +
                                 " assigned issues is too large");
    }
    auto [assigned, signs] = detail::AgendaContext::partial_of(s);
    (void)assigned;
    search.sign_mask = signs;
    return search;
}

// Iterates all k-subsets of {0..n-1} as bitmasks (Gosper's hack).
template <typename Fn>
void for_each_subset_of_size(std::size_t n, std::size_t k, Fn&& fn) {
    if (k == 0) {
        fn(0ULL);
        return;
    }
    if (k > n) return;
    std::uint64_t mask = (1ULL << k) - 1ULL;
    const std::uint64_t limit = 1ULL << n;
    while (mask < limit) {
        fn(mask);
        std::uint64_t c = mask & (~mask + 1);
        std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

std::vector<JudgmentSet> sorted_partials(const detail::AgendaContext& ctx,
                                         const std::vector<std::uint64_t>& assigned_masks,
                                         std::uint64_t sign_mask) {
    std::vector<JudgmentSet> out;
    out.reserve(assigned_masks.size());
    for (std::uint64_t m : assigned_masks) {
        out.push_back(ctx.to_partial_judgment_set(m, sign_mask));
    }
    std::sort(out.begin(), out.end(), JudgmentSet::sign_less);
    return out;
}

} // namespace

std::vector<JudgmentSet> maximal_consistent_subsets(const JudgmentSet& s, const Limits& limits) {
    detail::AgendaContext ctx(s.agenda(), limits);
    SubsetSearch search = make_subset_search(s, ctx);
    const std::size_t a = search.positions.size();

    std::vector<std::uint64_t> maximal; // agenda-position masks
    for (std::size_t k = a + 1; k-- > 0;) {
        for_each_subset_of_size(a, k, [&](std::uint64_t submask) {
            std::uint64_t mask = search.to_agenda_mask(submask);
            for (std::uint64_t m : maximal) {
                if ((mask & m) == mask) return; // contained in a larger consistent subset
            }
            if (ctx.partial_consistent(mask, search.sign_mask)) {
                maximal.push_back(mask);
            }
        });
    }
    return sorted_partials(ctx, maximal, search.sign_mask);
}

std::vector<JudgmentSet> maxcard_consistent_subsets(const JudgmentSet& s, const Limits& limits) {
    detail::AgendaContext ctx(s.agenda(), limits);
    SubsetSearch search = make_subset_search(s, ctx);
    const std::size_t a = search.positions.size();

    for (std::size_t k = a + 1; k-- > 0;) {
        std::vector<std::uint64_t> found;
        for_each_subset_of_size(a, k, [&](std::uint64_t submask) {
            std::uint64_t mask = search.to_agenda_mask(submask);
            if (ctx.partial_consistent(mask, search.sign_mask)) {
                found.push_back(mask);
            }
        });
        if (!found.empty()) {
            return sorted_partials(ctx, found, search.sign_mask);
        }
    }
    // k == 0 (the empty subset) is always consistent because the constraint
    // is, so this point is unreachable.
    throw std::logic_error("no consistent subset found");
}

int hamming(const JudgmentSet& a, const JudgmentSet& b) {
    if (!(a.agenda() == b.agenda())) {
        throw std::invalid_argument("hamming distance requires judgment sets over one agenda");
    }
    if (!a.is_complete() || !b.is_complete()) {
        throw std::invalid_argument("hamming distance requires complete judgment sets");
    }
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.at(i) != b.at(i)) ++d;
    }
    return d;
}

long long profile_distance(const Profile& p, const Profile& q) {
    if (!(p.agenda() == q.agenda())) {
        throw std::invalid_argument("profile distance requires profiles over one agenda");
    }
    if (p.size() != q.size()) {
        throw std::invalid_argument("profile distance requires equal-size profiles");
    }
    long long total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        total += hamming(p.member(i), q.member(i));
    }
    return total;
}

Agenda make_preference_agenda(int alternatives, const Limits& limits) {
    if (alternatives < 2) {
        throw std::invalid_argument("preference agenda needs at least two alternatives");
    }
    const int m = alternatives;
    // pair_atom(i, j) for i < j; x_i over x_j for i > j is the negated atom.
    auto pair_formula = [&](int i, int j) {
        if (i < j) {
            return Formula::atom("P_" + std::to_string(i) + "_" + std::to_string(j));
        }
        return Formula::negation(
            Formula::atom("P_" + std::to_string(j) + "_" + std::to_string(i)));
    };

    std::vector<Formula> preagenda;
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            preagenda.push_back(pair_formula(i, j));
        }
    }

    // Transitivity over all ordered triples of distinct alternatives.
    Formula gamma = Formula::verum();
    bool first = true;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            for (int k = 1; k <= m; ++k) {
                if (i == j || j == k || i == k) continue;
                Formula clause = Formula::implication(
                    Formula::conjunction(pair_formula(i, j), pair_formula(j, k)),
                    pair_formula(i, k));
                gamma = first ? clause : Formula::conjunction(std::move(gamma), std::move(clause));
                first = false;
            }
        }
    }
    return Agenda(std::move(preagenda), std::move(gamma), limits);
}

} // namespace jagg
