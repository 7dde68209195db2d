#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>

namespace jagg {

enum class Connective : std::uint8_t { True, False, Atom, Not, And, Or, Implies, Iff };

// A (total) truth assignment, keyed by atom name.
using Valuation = std::map<std::string, bool>;

// Immutable propositional formula. Copies share structure and are cheap;
// all observers are const, so formulas are safe to use concurrently.
// Structural equality (operator==) is the identity used everywhere: two
// formulas are the same issue only if their trees are identical.
class Formula {
public:
    Formula(); // the constant true

    static Formula verum();
    static Formula falsum();
    static Formula atom(std::string name); // name must match [A-Za-z][A-Za-z0-9_]*
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);
    static Formula biconditional(Formula lhs, Formula rhs);

    Connective kind() const noexcept;
    const std::string& atom_name() const; // requires kind() == Atom
    const Formula& left() const;          // requires a unary or binary node
    const Formula& right() const;         // requires a binary node

    bool operator==(const Formula& other) const;
    std::size_t hash() const noexcept; // structural, cached at construction

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

bool is_valid_atom_name(std::string_view name);

// Canonical text form; parse_formula(format_formula(f)) == f structurally.
// Connectives: ~ & | -> <->, with precedence ~ > & > | > -> > <-> and
// right-associative -> and <->. Parentheses are emitted only where needed.
std::string format_formula(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

// Grammar accepted (whitespace free between tokens):
//   formula := iff
//   iff     := implies ('<->' iff)?
//   implies := or ('->' implies)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := ('~' | '!') unary | primary
//   primary := 'true' | 'false' | atom | '(' formula ')'
// Throws ParseError with the byte offset of the first bad token.
Formula parse_formula(std::string_view text);

// Atom names occurring in f (respectively in any member of fs), sorted.
std::set<std::string> atoms(const Formula& f);
std::set<std::string> atoms(std::span<const Formula> fs);

// Truth value of f under v. Throws std::invalid_argument if an atom of f is
// missing from v.
bool evaluate(const Formula& f, const Valuation& v);

} // namespace jagg
