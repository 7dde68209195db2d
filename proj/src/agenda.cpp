#include "jagg/agenda.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "jagg/consistency.hpp"
#include "jagg/errors.hpp"

namespace jagg {

Sign flip(Sign s) {
    switch (s) {
    case Sign::Positive: return Sign::Negative;
    case Sign::Negative: return Sign::Positive;
    default: return Sign::Absent;
    }
}

char to_char(Sign s) {
    switch (s) {
    case Sign::Positive: return '+';
    case Sign::Negative: return '-';
    default: return '.';
    }
}

Sign sign_from_char(char c) {
    switch (c) {
    case '+': return Sign::Positive;
    case '-': return Sign::Negative;
    case '.': return Sign::Absent;
    default:
        throw std::invalid_argument(std::string("invalid sign character '") + c +
                                    "' (expected '+', '-' or '.')");
    }
}

// ---------------------------------------------------------------------------
// Agenda
// ---------------------------------------------------------------------------

struct Agenda::Data {
    std::vector<Formula> preagenda;
    Formula constraint;
};

Agenda::Agenda(std::vector<Formula> preagenda, Formula constraint, const Limits& limits) {
    if (preagenda.empty()) {
        throw std::invalid_argument("agenda must contain at least one issue");
    }
    for (std::size_t i = 0; i < preagenda.size(); ++i) {
        for (std::size_t k = i + 1; k < preagenda.size(); ++k) {
            if (preagenda[i] == preagenda[k]) {
                throw std::invalid_argument("preagenda entries " + std::to_string(i) + " and " +
                                            std::to_string(k) + " are structurally equal");
            }
        }
    }
    if (!is_consistent({}, constraint, limits)) {
        throw std::invalid_argument("integrity constraint is inconsistent");
    }
    for (std::size_t i = 0; i < preagenda.size(); ++i) {
        std::vector<Formula> single{preagenda[i]};
        if (!is_consistent(single, constraint, limits)) {
            throw std::invalid_argument("preagenda entry " + std::to_string(i) +
                                        " is unsatisfiable under the constraint");
        }
        single[0] = Formula::negation(preagenda[i]);
        if (!is_consistent(single, constraint, limits)) {
            throw std::invalid_argument("preagenda entry " + std::to_string(i) +
                                        " is entailed by the constraint");
        }
    }
    data_ = std::make_shared<const Data>(Data{std::move(preagenda), std::move(constraint)});
}

std::size_t Agenda::size() const { return data_->preagenda.size(); }

const Formula& Agenda::issue(std::size_t i) const {
    if (i >= data_->preagenda.size()) {
        throw std::out_of_range("issue index " + std::to_string(i) + " out of range");
    }
    return data_->preagenda[i];
}

std::span<const Formula> Agenda::preagenda() const { return data_->preagenda; }

const Formula& Agenda::constraint() const { return data_->constraint; }

Formula Agenda::signed_issue(std::size_t i, Sign sign) const {
    const Formula& f = issue(i);
    switch (sign) {
    case Sign::Positive: return f;
    case Sign::Negative: return Formula::negation(f);
    default: throw std::invalid_argument("signed_issue requires Positive or Negative");
    }
}

bool Agenda::operator==(const Agenda& other) const {
    if (data_ == other.data_) return true;
    if (data_->preagenda.size() != other.data_->preagenda.size()) return false;
    if (!(data_->constraint == other.data_->constraint)) return false;
    for (std::size_t i = 0; i < data_->preagenda.size(); ++i) {
        if (!(data_->preagenda[i] == other.data_->preagenda[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// JudgmentSet
// ---------------------------------------------------------------------------

JudgmentSet::JudgmentSet(Agenda agenda, std::vector<Sign> signs)
    : agenda_(std::move(agenda)), signs_(std::move(signs)) {
    if (signs_.size() != agenda_.size()) {
        throw std::invalid_argument("judgment set has " + std::to_string(signs_.size()) +
                                    " signs for an agenda of size " +
                                    std::to_string(agenda_.size()));
    }
}

const Agenda& JudgmentSet::agenda() const { return agenda_; }

std::size_t JudgmentSet::size() const { return signs_.size(); }

Sign JudgmentSet::at(std::size_t i) const {
    if (i >= signs_.size()) {
        throw std::out_of_range("judgment index " + std::to_string(i) + " out of range");
    }
    return signs_[i];
}

std::span<const Sign> JudgmentSet::signs() const { return signs_; }

bool JudgmentSet::is_complete() const {
    return std::none_of(signs_.begin(), signs_.end(), [](Sign s) { return s == Sign::Absent; });
}

std::size_t JudgmentSet::assigned_count() const {
    return static_cast<std::size_t>(
        std::count_if(signs_.begin(), signs_.end(), [](Sign s) { return s != Sign::Absent; }));
}

std::vector<std::size_t> JudgmentSet::assigned_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (signs_[i] != Sign::Absent) out.push_back(i);
    }
    return out;
}

std::vector<Formula> JudgmentSet::formulas() const {
    std::vector<Formula> out;
    out.reserve(assigned_count());
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        if (signs_[i] != Sign::Absent) out.push_back(agenda_.signed_issue(i, signs_[i]));
    }
    return out;
}

bool JudgmentSet::operator==(const JudgmentSet& other) const {
    return agenda_ == other.agenda_ && signs_ == other.signs_;
}

bool JudgmentSet::sign_less(const JudgmentSet& a, const JudgmentSet& b) {
    return std::lexicographical_compare(
        a.signs_.begin(), a.signs_.end(), b.signs_.begin(), b.signs_.end(),
        [](Sign x, Sign y) { return static_cast<int>(x) < static_cast<int>(y); });
}

std::string sign_string(const JudgmentSet& j) {
    std::string out;
    out.reserve(j.size());
    for (Sign s : j.signs()) out.push_back(to_char(s));
    return out;
}

JudgmentSet judgment_from_string(Agenda agenda, std::string_view signs) {
    std::vector<Sign> v;
    v.reserve(signs.size());
    for (char c : signs) v.push_back(sign_from_char(c));
    return JudgmentSet(std::move(agenda), std::move(v));
}

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

Profile::Profile(Agenda agenda, std::vector<JudgmentSet> members, const Limits& limits)
    : agenda_(std::move(agenda)), members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("profile must contain at least one judgment set");
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const JudgmentSet& j = members_[i];
        if (!(j.agenda() == agenda_)) {
            throw std::invalid_argument("profile member " + std::to_string(i) +
                                        " is over a different agenda");
        }
        if (!j.is_complete()) {
            throw std::invalid_argument("profile member " + std::to_string(i) +
                                        " is not complete");
        }
        if (!is_consistent(j.formulas(), agenda_.constraint(), limits)) {
            throw std::invalid_argument("profile member " + std::to_string(i) +
                                        " is inconsistent with the constraint");
        }
    }
}

const Agenda& Profile::agenda() const { return agenda_; }

std::size_t Profile::size() const { return members_.size(); }

const JudgmentSet& Profile::member(std::size_t i) const {
    if (i >= members_.size()) {
        throw std::out_of_range("profile member index " + std::to_string(i) + " out of range");
    }
    return members_[i];
}

std::span<const JudgmentSet> Profile::members() const { return members_; }

Profile profile_from_strings(Agenda agenda, std::span<const std::string> rows,
                             const Limits& limits) {
    std::vector<JudgmentSet> members;
    members.reserve(rows.size());
    for (const std::string& row : rows) {
        members.push_back(judgment_from_string(agenda, row));
    }
    return Profile(std::move(agenda), std::move(members), limits);
}

// ---------------------------------------------------------------------------
// SupportTable
// ---------------------------------------------------------------------------

SupportTable::SupportTable(std::vector<int> positive_counts, int agents)
    : positive_(std::move(positive_counts)), agents_(agents) {
    for (int c : positive_) {
        if (c < 0 || c > agents_) {
            throw std::invalid_argument("support count out of range");
        }
    }
}

std::size_t SupportTable::issues() const { return positive_.size(); }

int SupportTable::agents() const { return agents_; }

int SupportTable::count(std::size_t issue, Sign sign) const {
    if (issue >= positive_.size()) {
        throw std::out_of_range("support issue index out of range");
    }
    switch (sign) {
    case Sign::Positive: return positive_[issue];
    case Sign::Negative: return agents_ - positive_[issue];
    default: throw std::invalid_argument("support counts exist for Positive and Negative only");
    }
}

} // namespace jagg
