#include "agenda_context.hpp"

#include <algorithm>
#include <stdexcept>

#include "jagg/consistency.hpp"
#include "jagg/errors.hpp"

namespace jagg::detail {

AgendaContext::AgendaContext(Agenda agenda, const Limits& limits)
    : agenda_(std::move(agenda)), m_(agenda_.size()) {
    if (m_ > 64) {
        throw ResourceLimitError("agendas with more than 64 issues are not supported");
    }
    // Every model of the constraint induces one complete consistent sign
    // vector, and every complete consistent sign vector has such a witness
    // model, so sweeping the constraint's models covers J_A exactly. The
    // model enumeration must range over the preagenda's atoms too, even when
    // the constraint does not mention them, so each issue is passed through
    // a trivially true wrapper (phi | ~phi).
    std::vector<Formula> widen;
    widen.reserve(m_);
    for (const Formula& f : agenda_.preagenda()) {
        widen.push_back(Formula::disjunction(f, Formula::negation(f)));
    }
    std::vector<Valuation> gamma_models = enumerate_models(widen, agenda_.constraint(), limits);
    std::vector<std::uint64_t> found;
    found.reserve(gamma_models.size());
    for (const Valuation& v : gamma_models) {
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (evaluate(agenda_.issue(i), v)) mask |= 1ULL << i;
        }
        found.push_back(mask);
    }
    masks_ = canonicalize_masks(std::move(found), m_);
    mask_set_.insert(masks_.begin(), masks_.end());
}

JudgmentSet AgendaContext::to_judgment_set(std::uint64_t mask) const {
    std::vector<Sign> signs(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        signs[i] = ((mask >> i) & 1ULL) ? Sign::Positive : Sign::Negative;
    }
    return JudgmentSet(agenda_, std::move(signs));
}

JudgmentSet AgendaContext::to_partial_judgment_set(std::uint64_t assigned,
                                                   std::uint64_t signs) const {
    std::vector<Sign> out(m_, Sign::Absent);
    for (std::size_t i = 0; i < m_; ++i) {
        if ((assigned >> i) & 1ULL) {
            out[i] = ((signs >> i) & 1ULL) ? Sign::Positive : Sign::Negative;
        }
    }
    return JudgmentSet(agenda_, std::move(out));
}

std::vector<JudgmentSet> AgendaContext::to_judgment_sets(
    const std::vector<std::uint64_t>& masks) const {
    std::vector<JudgmentSet> out;
    out.reserve(masks.size());
    for (std::uint64_t mask : masks) out.push_back(to_judgment_set(mask));
    return out;
}

std::uint64_t AgendaContext::mask_of(const JudgmentSet& j) {
    if (!j.is_complete()) {
        throw std::invalid_argument("mask_of requires a complete judgment set");
    }
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j.at(i) == Sign::Positive) mask |= 1ULL << i;
    }
    return mask;
}

std::pair<std::uint64_t, std::uint64_t> AgendaContext::partial_of(const JudgmentSet& j) {
    std::uint64_t assigned = 0;
    std::uint64_t signs = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j.at(i) == Sign::Absent) continue;
        assigned |= 1ULL << i;
        if (j.at(i) == Sign::Positive) signs |= 1ULL << i;
    }
    return {assigned, signs};
}

std::vector<std::uint64_t> canonicalize_masks(std::vector<std::uint64_t> masks, std::size_t m) {
    std::sort(masks.begin(), masks.end(), [m](std::uint64_t a, std::uint64_t b) {
        return AgendaContext::canonical_key(a, m) < AgendaContext::canonical_key(b, m);
    });
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    return masks;
}

} // namespace jagg::detail
