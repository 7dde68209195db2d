#include "jagg/decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "agenda_context.hpp"
#include "jagg/consistency.hpp"
#include "jagg/errors.hpp"
#include "jagg/formula.hpp"

namespace jagg {

namespace {

std::uint64_t mask_of_block(const IndexSet& block) {
    std::uint64_t mask = 0;
    for (std::size_t i : block) mask |= 1ULL << i;
    return mask;
}

// Normalizes every block and checks that together they partition the
// preagenda indices exactly.
std::vector<IndexSet> normalized_partition(const Agenda& a, std::span<const IndexSet> blocks) {
    if (blocks.empty()) {
        throw std::invalid_argument("a partition needs at least one block");
    }
    std::vector<IndexSet> normalized;
    std::uint64_t seen = 0;
    for (const IndexSet& block : blocks) {
        IndexSet b = normalize_block(block, a.size());
        std::uint64_t mask = mask_of_block(b);
        if (seen & mask) {
            throw std::invalid_argument("partition blocks overlap");
        }
        seen |= mask;
        normalized.push_back(std::move(b));
    }
    std::uint64_t full = a.size() == 64 ? ~0ULL : (1ULL << a.size()) - 1ULL;
    if (seen != full) {
        throw std::invalid_argument("partition blocks do not cover the agenda");
    }
    std::sort(normalized.begin(), normalized.end(),
              [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
    return normalized;
}

// Distinct projections of the consistent complete sign vectors onto `mask`.
std::vector<std::uint64_t> distinct_projections(const detail::AgendaContext& ctx,
                                                std::uint64_t mask) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    for (std::uint64_t v : ctx.all()) {
        if (seen.insert(v & mask).second) out.push_back(v & mask);
    }
    return out;
}

// True iff every combination of block projections glues to a member of the
// full consistent set list. Because the projection map from the full list
// into the product of the block projections is injective for disjoint
// covering blocks, equality of cardinalities already decides this; the
// explicit glue walk below re-verifies it directly.
bool partition_is_independent(const detail::AgendaContext& ctx,
                              const std::vector<std::uint64_t>& block_masks) {
    std::vector<std::vector<std::uint64_t>> projections;
    unsigned long long combinations = 1;
    for (std::uint64_t mask : block_masks) {
        projections.push_back(distinct_projections(ctx, mask));
        combinations *= projections.back().size();
        if (combinations > ctx.all().size()) return false;
    }
    if (combinations != ctx.all().size()) return false;

    std::vector<std::size_t> choice(block_masks.size(), 0);
    for (;;) {
        std::uint64_t glue = 0;
        for (std::size_t b = 0; b < block_masks.size(); ++b) {
            glue |= projections[b][choice[b]];
        }
        if (!ctx.contains(glue)) return false;
        std::size_t b = 0;
        while (b < choice.size() && ++choice[b] == projections[b].size()) {
            choice[b] = 0;
            ++b;
        }
        if (b == choice.size()) break;
    }
    return true;
}

// {part, complement-of-part} as a partition of the whole agenda.
bool bipartition_is_independent(const detail::AgendaContext& ctx, std::uint64_t part) {
    return partition_is_independent(ctx, {part, ctx.full_mask() & ~part});
}

bool iod_is_independent(const detail::AgendaContext& ctx, std::uint64_t first,
                        std::uint64_t second) {
    const std::uint64_t shared = first & second;
    // Group the block projections by their shared-issue pattern; only pairs
    // within one group agree on the overlap.
    std::unordered_map<std::uint64_t, std::pair<std::unordered_set<std::uint64_t>,
                                                std::unordered_set<std::uint64_t>>>
        groups;
    for (std::uint64_t v : ctx.all()) {
        auto& group = groups[v & shared];
        group.first.insert(v & first);
        group.second.insert(v & second);
    }
    for (const auto& [pattern, group] : groups) {
        for (std::uint64_t x : group.first) {
            for (std::uint64_t y : group.second) {
                if (!ctx.contains(x | y)) return false;
            }
        }
    }
    return true;
}

bool formula_is_verum(const Formula& f) { return f == Formula::verum(); }

} // namespace

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

std::string to_string(DecompositionKind kind) {
    switch (kind) {
    case DecompositionKind::Trivial: return "trivial";
    case DecompositionKind::Partition: return "partition";
    case DecompositionKind::Overlapping: return "overlapping";
    }
    throw std::logic_error("unknown decomposition kind");
}

Decomposition::Decomposition(DecompositionKind kind, Agenda agenda, std::vector<IndexSet> blocks)
    : kind_(kind), agenda_(std::move(agenda)), blocks_(std::move(blocks)) {
    block_agendas_.reserve(blocks_.size());
    for (const IndexSet& block : blocks_) {
        // Blocks are normalized (ascending, unique), so a block covering
        // every issue restricts to the agenda itself.
        block_agendas_.push_back(block.size() == agenda_.size() ? agenda_
                                                                : restrict_agenda(agenda_, block));
    }
}

Decomposition Decomposition::trivial(Agenda a) {
    IndexSet all(a.size());
    std::iota(all.begin(), all.end(), 0);
    return Decomposition(DecompositionKind::Trivial, std::move(a), {std::move(all)});
}

Decomposition Decomposition::certified_partition(Agenda a, std::vector<IndexSet> blocks,
                                                 const Limits& limits) {
    std::vector<IndexSet> normalized = normalized_partition(a, blocks);
    if (normalized.size() == 1) return trivial(std::move(a));
    if (!is_independent_partition(a, normalized, limits)) {
        throw std::invalid_argument("blocks do not form an independent partition");
    }
    return Decomposition(DecompositionKind::Partition, std::move(a), std::move(normalized));
}

Decomposition Decomposition::certified_syntactic(Agenda a, std::vector<IndexSet> blocks) {
    std::vector<IndexSet> normalized = normalized_partition(a, blocks);
    if (normalized.size() == 1) return trivial(std::move(a));
    if (!is_syntactically_independent(a, normalized)) {
        throw std::invalid_argument("blocks are not syntactically independent");
    }
    return Decomposition(DecompositionKind::Partition, std::move(a), std::move(normalized));
}

Decomposition Decomposition::certified_iod(Agenda a, IndexSet first, IndexSet second,
                                           const Limits& limits) {
    if (!is_iod(a, first, second, limits)) {
        throw std::invalid_argument("blocks do not form an independent overlapping decomposition");
    }
    std::vector<IndexSet> blocks{normalize_block(std::move(first), a.size()),
                                 normalize_block(std::move(second), a.size())};
    return Decomposition(DecompositionKind::Overlapping, std::move(a), std::move(blocks));
}

IndexSet Decomposition::overlap() const {
    if (kind_ != DecompositionKind::Overlapping) return {};
    IndexSet out;
    std::ranges::set_intersection(blocks_[0], blocks_[1], std::back_inserter(out));
    return out;
}

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

bool is_syntactically_independent(const Agenda& a, std::span<const IndexSet> blocks) {
    std::vector<IndexSet> normalized = normalized_partition(a, blocks);
    if (!formula_is_verum(a.constraint())) return false;
    std::vector<std::set<std::string>> atom_sets;
    for (const IndexSet& block : normalized) {
        std::vector<Formula> formulas;
        for (std::size_t i : block) formulas.push_back(a.issue(i));
        atom_sets.push_back(atoms(formulas));
    }
    for (std::size_t i = 0; i < atom_sets.size(); ++i) {
        for (std::size_t j = i + 1; j < atom_sets.size(); ++j) {
            for (const std::string& name : atom_sets[i]) {
                if (atom_sets[j].contains(name)) return false;
            }
        }
    }
    return true;
}

std::vector<IndexSet> syntactic_components(const Agenda& a) {
    const std::size_t m = a.size();
    if (!formula_is_verum(a.constraint())) {
        IndexSet all(m);
        std::iota(all.begin(), all.end(), 0);
        return {std::move(all)};
    }
    // Union-find over issues; issues sharing an atom join one component.
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::unordered_map<std::string, std::size_t> first_user;
    for (std::size_t i = 0; i < m; ++i) {
        for (const std::string& name : atoms(a.issue(i))) {
            auto [it, inserted] = first_user.try_emplace(name, i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    }
    std::unordered_map<std::size_t, IndexSet> by_root;
    for (std::size_t i = 0; i < m; ++i) by_root[find(i)].push_back(i);
    std::vector<IndexSet> components;
    for (auto& [root, block] : by_root) components.push_back(std::move(block));
    std::sort(components.begin(), components.end(),
              [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
    return components;
}

bool is_independent_partition(const Agenda& a, std::span<const IndexSet> blocks,
                              const Limits& limits) {
    std::vector<IndexSet> normalized = normalized_partition(a, blocks);
    detail::AgendaContext ctx(a, limits);
    std::vector<std::uint64_t> masks;
    for (const IndexSet& block : normalized) masks.push_back(mask_of_block(block));
    return partition_is_independent(ctx, masks);
}

bool is_iod(const Agenda& a, const IndexSet& first, const IndexSet& second,
            const Limits& limits) {
    IndexSet f = normalize_block(first, a.size());
    IndexSet s = normalize_block(second, a.size());
    std::uint64_t fm = mask_of_block(f);
    std::uint64_t sm = mask_of_block(s);
    std::uint64_t full = a.size() == 64 ? ~0ULL : (1ULL << a.size()) - 1ULL;
    if ((fm | sm) != full) {
        throw std::invalid_argument("the two blocks must cover the agenda");
    }
    if (fm == full || sm == full) {
        throw std::invalid_argument("both blocks must be proper sub-agendas");
    }
    detail::AgendaContext ctx(a, limits);
    return iod_is_independent(ctx, fm, sm);
}

// ---------------------------------------------------------------------------
// Searches
// ---------------------------------------------------------------------------

namespace {

// Splits `block` (given as a bit mask) along global independent
// bipartitions until no further split exists; appends the leaves.
void split_block(const detail::AgendaContext& ctx, std::uint64_t block,
                 std::vector<std::uint64_t>& leaves) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < ctx.issue_count(); ++i) {
        if ((block >> i) & 1ULL) positions.push_back(i);
    }
    if (positions.size() > 1) {
        // Enumerate the proper sub-blocks containing the lowest position
        // (each split is found from either side, so fixing one side's
        // membership loses nothing).
        const std::size_t k = positions.size() - 1;
        for (std::uint64_t bits = 0; bits + 1 < (1ULL << k); ++bits) {
            std::uint64_t part = 1ULL << positions[0];
            for (std::size_t t = 0; t < k; ++t) {
                if ((bits >> t) & 1ULL) part |= 1ULL << positions[t + 1];
            }
            if (bipartition_is_independent(ctx, part)) {
                split_block(ctx, part, leaves);
                split_block(ctx, block & ~part, leaves);
                return;
            }
        }
    }
    leaves.push_back(block);
}

IndexSet block_of_mask(std::uint64_t mask) {
    IndexSet out;
    for (std::size_t i = 0; i < 64; ++i) {
        if ((mask >> i) & 1ULL) out.push_back(i);
    }
    return out;
}

} // namespace

std::vector<IndexSet> find_finest_independent_partition(const Agenda& a, const Limits& limits) {
    if (static_cast<long long>(a.size()) > limits.max_partition_issues) {
        throw ResourceLimitError("agenda too large for the finest-partition search");
    }
    detail::AgendaContext ctx(a, limits);
    std::vector<std::uint64_t> leaves;
    split_block(ctx, ctx.full_mask(), leaves);
    std::vector<IndexSet> blocks;
    for (std::uint64_t leaf : leaves) blocks.push_back(block_of_mask(leaf));
    std::sort(blocks.begin(), blocks.end(),
              [](const IndexSet& x, const IndexSet& y) { return x.front() < y.front(); });
    return blocks;
}

std::optional<std::pair<IndexSet, IndexSet>> find_iod(const Agenda& a, const Limits& limits) {
    const std::size_t m = a.size();
    long long candidates = 1;
    for (std::size_t i = 0; i < m; ++i) {
        candidates *= 3;
        if (candidates > limits.max_iod_candidates) {
            throw ResourceLimitError("too many candidate block labelings in the search");
        }
    }
    detail::AgendaContext ctx(a, limits);

    // Each issue gets a label: first block only, second block only, or both.
    std::vector<int> labels(m, 0);
    for (long long counter = 0; counter < candidates; ++counter) {
        long long rest = counter;
        for (std::size_t i = m; i-- > 0;) {
            labels[i] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        std::uint64_t first = 0;
        std::uint64_t second = 0;
        bool seen_exclusive = false;
        bool swapped_duplicate = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (labels[i] == 0) {
                first |= 1ULL << i;
                seen_exclusive = true;
            } else if (labels[i] == 1) {
                // Canonical representative of the swapped pair: the lowest
                // issue exclusive to one block belongs to the first block.
                if (!seen_exclusive) swapped_duplicate = true;
                second |= 1ULL << i;
                seen_exclusive = true;
            } else {
                first |= 1ULL << i;
                second |= 1ULL << i;
            }
        }
        if (swapped_duplicate) continue;
        if (first == ctx.full_mask() || second == ctx.full_mask()) continue;
        if (iod_is_independent(ctx, first, second)) {
            return std::make_pair(block_of_mask(first), block_of_mask(second));
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Blockwise aggregation
// ---------------------------------------------------------------------------

std::vector<JudgmentSet> aggregate_via_decomposition(const BlockRule& rule,
                                                     const Decomposition& d, const Profile& p,
                                                     const Limits& limits) {
    if (!rule) {
        throw std::invalid_argument("blockwise aggregation needs a callable rule");
    }
    if (!(d.agenda() == p.agenda())) {
        throw std::invalid_argument("profile is over a different agenda than the decomposition");
    }
    const Agenda& a = d.agenda();
    if (d.is_trivial()) {
        return rule(a, p, limits);
    }

    std::vector<std::vector<JudgmentSet>> block_outputs;
    for (std::size_t b = 0; b < d.blocks().size(); ++b) {
        const IndexSet& block = d.blocks()[b];
        const Agenda& sub = d.block_agenda(b);
        std::vector<JudgmentSet> members;
        members.reserve(p.size());
        for (const JudgmentSet& j : p.members()) {
            std::vector<Sign> signs;
            signs.reserve(block.size());
            for (std::size_t i : block) signs.push_back(j.at(i));
            members.emplace_back(sub, std::move(signs));
        }
        Profile subp(sub, std::move(members), limits);
        std::vector<JudgmentSet> outputs = rule(sub, subp, limits);
        if (outputs.empty()) {
            throw std::invalid_argument("the rule returned no judgment sets on a block");
        }
        block_outputs.push_back(std::move(outputs));
    }

    // Deliberately avoids enumerating the joint candidate space: the whole
    // benefit of blockwise aggregation is that only per-block spaces and the
    // (few) glued outcomes are ever materialized.
    std::vector<std::uint64_t> glued;
    auto glue_pattern = [&](std::span<const std::size_t> choice) -> bool {
        // Combine the chosen block outcomes into one sign vector; reject the
        // combination when two blocks disagree on a shared issue.
        std::vector<Sign> signs(a.size(), Sign::Absent);
        for (std::size_t b = 0; b < block_outputs.size(); ++b) {
            const IndexSet& block = d.blocks()[b];
            const JudgmentSet& out = block_outputs[b][choice[b]];
            for (std::size_t local = 0; local < block.size(); ++local) {
                Sign value = out.at(local);
                if (signs[block[local]] != Sign::Absent && signs[block[local]] != value) {
                    return false;
                }
                signs[block[local]] = value;
            }
        }
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (signs[i] == Sign::Absent) {
                throw std::invalid_argument("the rule returned an incomplete judgment set on a block");
            }
            if (signs[i] == Sign::Positive) mask |= 1ULL << i;
        }
        // The decomposition certificate guarantees consistency of the glue
        // when the block outcomes are complete and consistent; block rules
        // are arbitrary callables, so verify each glued outcome directly
        // (one satisfiability check per output, not per joint candidate).
        std::vector<Formula> accepted;
        accepted.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            accepted.push_back(a.signed_issue(i, signs[i]));
        }
        if (!is_consistent(accepted, a.constraint(), limits)) {
            throw std::logic_error("blockwise glue produced an inconsistent judgment set");
        }
        glued.push_back(mask);
        return true;
    };

    std::vector<std::size_t> choice(block_outputs.size(), 0);
    for (;;) {
        glue_pattern(choice);
        std::size_t b = 0;
        while (b < choice.size() && ++choice[b] == block_outputs[b].size()) {
            choice[b] = 0;
            ++b;
        }
        if (b == choice.size()) break;
    }

    glued = detail::canonicalize_masks(std::move(glued), a.size());
    std::vector<JudgmentSet> results;
    results.reserve(glued.size());
    for (std::uint64_t mask : glued) {
        std::vector<Sign> signs(a.size(), Sign::Negative);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if ((mask >> i) & 1ULL) signs[i] = Sign::Positive;
        }
        results.emplace_back(a, std::move(signs));
    }
    return results;
}

std::vector<JudgmentSet> aggregate_via_decomposition(RuleId rule, const Decomposition& d,
                                                     const Profile& p, const Limits& limits) {
    return aggregate_via_decomposition(
        [rule](const Agenda& a, const Profile& profile, const Limits& l) {
            return apply_rule(rule, a, profile, l);
        },
        d, p, limits);
}

} // namespace jagg
