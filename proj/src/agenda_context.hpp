#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/limits.hpp"

namespace jagg::detail {

// Per-agenda reasoning context: all complete, constraint-consistent sign
// vectors of the agenda, packed as bitmasks (bit i set = Positive on issue
// i). Every semantic question about signed subsets of one agenda reduces to
// mask filtering over this list, which keeps the search-heavy rules simple
// and fast. Masks are kept in the canonical output order (position-by-
// position, Positive before Negative).
class AgendaContext {
public:
    AgendaContext(Agenda agenda, const Limits& limits);

    const Agenda& agenda() const { return agenda_; }
    std::size_t issue_count() const { return m_; }
    std::uint64_t full_mask() const { return m_ == 64 ? ~0ULL : (1ULL << m_) - 1ULL; }

    // Complete consistent sign vectors, canonically ordered.
    const std::vector<std::uint64_t>& all() const { return masks_; }

    bool contains(std::uint64_t mask) const { return mask_set_.contains(mask); }

    // True iff some complete consistent vector agrees with `signs` on the
    // positions in `assigned`.
    bool partial_consistent(std::uint64_t assigned, std::uint64_t signs) const {
        for (std::uint64_t v : masks_) {
            if ((v & assigned) == (signs & assigned)) return true;
        }
        return false;
    }

    // All complete consistent vectors agreeing with `signs` on `assigned`.
    std::vector<std::uint64_t> extensions(std::uint64_t assigned, std::uint64_t signs) const {
        std::vector<std::uint64_t> out;
        for (std::uint64_t v : masks_) {
            if ((v & assigned) == (signs & assigned)) out.push_back(v);
        }
        return out;
    }

    JudgmentSet to_judgment_set(std::uint64_t mask) const;
    JudgmentSet to_partial_judgment_set(std::uint64_t assigned, std::uint64_t signs) const;
    std::vector<JudgmentSet> to_judgment_sets(const std::vector<std::uint64_t>& masks) const;

    // Pack a complete judgment set (requires j.is_complete()).
    static std::uint64_t mask_of(const JudgmentSet& j);
    // Pack any judgment set into (assigned positions, positive positions).
    static std::pair<std::uint64_t, std::uint64_t> partial_of(const JudgmentSet& j);

    // Canonical sort key: ascending key order matches JudgmentSet::sign_less
    // on complete sets (issue 0 most significant, Positive before Negative).
    static std::uint64_t canonical_key(std::uint64_t mask, std::size_t m) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < m; ++i) {
            key = (key << 1) | (((mask >> i) & 1ULL) ^ 1ULL);
        }
        return key;
    }

private:
    Agenda agenda_;
    std::size_t m_;
    std::vector<std::uint64_t> masks_;
    std::unordered_set<std::uint64_t> mask_set_;
};

// Sorts masks into the canonical output order and drops duplicates.
std::vector<std::uint64_t> canonicalize_masks(std::vector<std::uint64_t> masks, std::size_t m);

} // namespace jagg::detail
