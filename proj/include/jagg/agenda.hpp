#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jagg/formula.hpp"
#include "jagg/limits.hpp"

namespace jagg {

enum class Sign : std::uint8_t { Positive = 0, Negative = 1, Absent = 2 };

Sign flip(Sign s); // Positive <-> Negative; Absent stays Absent
char to_char(Sign s); // '+', '-', '.'
Sign sign_from_char(char c); // throws std::invalid_argument on anything else

// An agenda: an ordered preagenda (phi_1, ..., phi_m) of formulas together
// with an integrity constraint. The full agenda is the preagenda closed
// under negation; issue i stands for the pair {phi_i, ~phi_i}.
//
// Construction validates:
//   - the preagenda is non-empty and free of structural duplicates,
//   - the constraint is consistent,
//   - every entry is both satisfiable and refutable under the constraint
//     (no entry is entailed or contradicted outright).
// Copies share representation and are cheap.
class Agenda {
public:
    explicit Agenda(std::vector<Formula> preagenda, Formula constraint = Formula::verum(),
                    const Limits& limits = {});

    std::size_t size() const; // number of issues m
    const Formula& issue(std::size_t i) const;
    std::span<const Formula> preagenda() const;
    const Formula& constraint() const;

    // phi_i for Positive, ~phi_i for Negative; Absent is rejected.
    Formula signed_issue(std::size_t i, Sign sign) const;

    // Structural equality of preagenda and constraint (fast path: shared
    // representation).
    bool operator==(const Agenda& other) const;

private:
    struct Data;
    std::shared_ptr<const Data> data_;
};

// A judgment set over an agenda: one sign per issue. Positive accepts
// phi_i, Negative accepts ~phi_i, Absent leaves the issue undecided.
// Complete means no Absent entries. Consistency is not enforced here; the
// operations that require it check it themselves.
class JudgmentSet {
public:
    JudgmentSet(Agenda agenda, std::vector<Sign> signs); // signs.size() must equal agenda.size()

    const Agenda& agenda() const;
    std::size_t size() const;
    Sign at(std::size_t i) const;
    std::span<const Sign> signs() const;

    bool is_complete() const;
    std::size_t assigned_count() const;
    std::vector<std::size_t> assigned_indices() const;

    // The accepted formulas: phi_i or ~phi_i for every assigned issue.
    std::vector<Formula> formulas() const;

    bool operator==(const JudgmentSet& other) const; // same agenda and signs

    // Canonical order on equal-agenda judgment sets: position-by-position
    // with Positive < Negative < Absent. This is the order used for rule
    // outputs and enumerations.
    static bool sign_less(const JudgmentSet& a, const JudgmentSet& b);

private:
    Agenda agenda_;
    std::vector<Sign> signs_;
};

// "+-+." style rendering of the sign vector.
std::string sign_string(const JudgmentSet& j);

// Builds a judgment set from a "+-+." style string over the given agenda.
JudgmentSet judgment_from_string(Agenda agenda, std::string_view signs);

// A non-empty sequence of complete, constraint-consistent judgment sets over
// one agenda. Construction validates all of that.
class Profile {
public:
    Profile(Agenda agenda, std::vector<JudgmentSet> members, const Limits& limits = {});

    const Agenda& agenda() const;
    std::size_t size() const; // number of individuals n
    const JudgmentSet& member(std::size_t i) const;
    std::span<const JudgmentSet> members() const;

private:
    Agenda agenda_;
    std::vector<JudgmentSet> members_;
};

// Convenience: build a profile from "+-.."-style rows.
Profile profile_from_strings(Agenda agenda, std::span<const std::string> rows,
                             const Limits& limits = {});

// Exact acceptance counts per signed issue for a profile. For every issue,
// count(i, Positive) + count(i, Negative) == agents().
class SupportTable {
public:
    SupportTable(std::vector<int> positive_counts, int agents);

    std::size_t issues() const;
    int agents() const;
    int count(std::size_t issue, Sign sign) const; // Positive or Negative only

private:
    std::vector<int> positive_;
    int agents_;
};

} // namespace jagg
