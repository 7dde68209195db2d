#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/core.hpp"
#include "jagg/limits.hpp"
#include "jagg/rules.hpp"

namespace jagg {

// How an agenda has been decomposed into blocks of preagenda indices:
//   Trivial     - one block holding every issue;
//   Partition   - disjoint blocks whose consistent judgment sets combine
//                 freely (every glue of block-consistent sets is consistent);
//   Overlapping - two possibly overlapping blocks covering the agenda such
//                 that any two block-consistent sets agreeing on the shared
//                 issues glue to a consistent set.
enum class DecompositionKind { Trivial, Partition, Overlapping };

std::string to_string(DecompositionKind kind);

// A decomposition that has been checked: the factory functions validate the
// block structure and verify the semantic independence property, so holders
// of a Decomposition may glue block outcomes without re-checking.
class Decomposition {
public:
    // The whole agenda as a single block; always valid.
    static Decomposition trivial(Agenda a);

    // Disjoint blocks covering the agenda; throws std::invalid_argument when
    // the blocks do not partition the preagenda indices or the partition is
    // not independent. A single-block partition collapses to Trivial.
    static Decomposition certified_partition(Agenda a, std::vector<IndexSet> blocks,
                                             const Limits& limits = {});

    // Like certified_partition, but the certificate is structural: the
    // constraint must be the plain truth constant and the blocks must use
    // pairwise disjoint atom sets (throws std::invalid_argument otherwise).
    static Decomposition certified_syntactic(Agenda a, std::vector<IndexSet> blocks);

    // Two possibly overlapping blocks covering the agenda, both proper;
    // throws std::invalid_argument when the pair is not an independent
    // overlapping decomposition.
    static Decomposition certified_iod(Agenda a, IndexSet first, IndexSet second,
                                       const Limits& limits = {});

    DecompositionKind kind() const { return kind_; }
    const Agenda& agenda() const { return agenda_; }
    std::span<const IndexSet> blocks() const { return blocks_; }
    bool is_trivial() const { return kind_ == DecompositionKind::Trivial; }

    // Sub-agenda of blocks()[b], precomputed at construction so that
    // repeated blockwise aggregation does not re-derive and re-validate it
    // on every call.
    const Agenda& block_agenda(std::size_t b) const { return block_agendas_.at(b); }

    // Shared issues of an Overlapping decomposition (ascending); empty for
    // the other kinds.
    IndexSet overlap() const;

private:
    Decomposition(DecompositionKind kind, Agenda agenda, std::vector<IndexSet> blocks);

    DecompositionKind kind_;
    Agenda agenda_;
    std::vector<IndexSet> blocks_;
    std::vector<Agenda> block_agendas_;
};

// Structural independence: true iff the constraint is the plain truth
// constant and the blocks use pairwise disjoint atom sets. The blocks must
// partition the preagenda indices (std::invalid_argument otherwise). A true
// result implies semantic independence; false decides nothing.
bool is_syntactically_independent(const Agenda& a, std::span<const IndexSet> blocks);

// Finest partition of the preagenda indices into atom-sharing components,
// blocks ordered by smallest index. When the constraint is anything other
// than the plain truth constant it may couple issues with disjoint atom
// sets, so a single all-issue block is returned.
std::vector<IndexSet> syntactic_components(const Agenda& a);

// Semantic independence of a partition: every combination of consistent
// complete judgment sets on the blocks glues to a consistent complete set
// on the whole agenda. The blocks must partition the preagenda indices
// (std::invalid_argument otherwise).
bool is_independent_partition(const Agenda& a, std::span<const IndexSet> blocks,
                              const Limits& limits = {});

// Independent overlapping decomposition: `first` and `second` must be
// proper, cover the agenda, and satisfy the glue property for every pair of
// block-consistent sets that agree on the shared issues. Malformed blocks
// raise std::invalid_argument.
bool is_iod(const Agenda& a, const IndexSet& first, const IndexSet& second,
            const Limits& limits = {});

// The unique finest independent partition of the agenda (the common
// refinement of all independent partitions). Throws ResourceLimitError when
// the agenda has more than limits.max_partition_issues issues.
std::vector<IndexSet> find_finest_independent_partition(const Agenda& a,
                                                        const Limits& limits = {});

// First independent overlapping decomposition in a fixed enumeration order
// (block labels counted per issue, swapped pairs visited once), or nullopt
// when only the trivial decomposition exists. Throws ResourceLimitError when
// the 3^m candidate labelings exceed limits.max_iod_candidates.
std::optional<std::pair<IndexSet, IndexSet>> find_iod(const Agenda& a, const Limits& limits = {});

// Anything that maps a (sub-)agenda and a profile over it to judgment sets.
using BlockRule =
    std::function<std::vector<JudgmentSet>(const Agenda&, const Profile&, const Limits&)>;

// Blockwise aggregation: applies the rule to the restriction of `p` to each
// block of `d` and glues the block outcomes back together. For a Partition
// every combination is glued; for an Overlapping decomposition only pairs
// agreeing on the shared issues are glued, and the result may be empty when
// no pair agrees. Glues are guaranteed consistent by the decomposition's
// certificate. Results are in canonical order.
std::vector<JudgmentSet> aggregate_via_decomposition(const BlockRule& rule,
                                                     const Decomposition& d, const Profile& p,
                                                     const Limits& limits = {});
std::vector<JudgmentSet> aggregate_via_decomposition(RuleId rule, const Decomposition& d,
                                                     const Profile& p, const Limits& limits = {});

} // namespace jagg
