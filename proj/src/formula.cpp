#include "jagg/formula.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "jagg/errors.hpp"

namespace jagg {

struct Formula::Node {
    Connective kind;
    std::string name; // Atom only
    Formula left;     // null for leaves
    Formula right;    // null for leaves and Not
    std::size_t hash;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

} // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula::Formula() { *this = verum(); }

Formula Formula::verum() {
    static const std::shared_ptr<const Node> node = std::make_shared<const Node>(
        Node{Connective::True, {}, Formula(nullptr), Formula(nullptr),
             static_cast<std::size_t>(Connective::True) + 1});
    return Formula(node);
}

Formula Formula::falsum() {
    static const std::shared_ptr<const Node> node = std::make_shared<const Node>(
        Node{Connective::False, {}, Formula(nullptr), Formula(nullptr),
             static_cast<std::size_t>(Connective::False) + 1});
    return Formula(node);
}

Formula Formula::atom(std::string name) {
    if (!is_valid_atom_name(name)) {
        throw std::invalid_argument("invalid atom name: '" + name + "'");
    }
    std::size_t h = mix(static_cast<std::size_t>(Connective::Atom) + 1,
                        std::hash<std::string>{}(name));
    return Formula(std::make_shared<const Node>(
        Node{Connective::Atom, std::move(name), Formula(nullptr), Formula(nullptr), h}));
}

Formula Formula::negation(Formula f) {
    std::size_t h = mix(static_cast<std::size_t>(Connective::Not) + 1, f.hash());
    return Formula(std::make_shared<const Node>(
        Node{Connective::Not, {}, std::move(f), Formula(nullptr), h}));
}

namespace {

std::size_t binary_hash(Connective kind, const Formula& lhs, const Formula& rhs) {
    return mix(mix(static_cast<std::size_t>(kind) + 1, lhs.hash()), rhs.hash());
}

} // namespace

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    std::size_t h = binary_hash(Connective::And, lhs, rhs);
    return Formula(std::make_shared<const Node>(
        Node{Connective::And, {}, std::move(lhs), std::move(rhs), h}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    std::size_t h = binary_hash(Connective::Or, lhs, rhs);
    return Formula(std::make_shared<const Node>(
        Node{Connective::Or, {}, std::move(lhs), std::move(rhs), h}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    std::size_t h = binary_hash(Connective::Implies, lhs, rhs);
    return Formula(std::make_shared<const Node>(
        Node{Connective::Implies, {}, std::move(lhs), std::move(rhs), h}));
}

Formula Formula::biconditional(Formula lhs, Formula rhs) {
    std::size_t h = binary_hash(Connective::Iff, lhs, rhs);
    return Formula(std::make_shared<const Node>(
        Node{Connective::Iff, {}, std::move(lhs), std::move(rhs), h}));
}

Connective Formula::kind() const noexcept { return node_->kind; }

const std::string& Formula::atom_name() const {
    if (node_->kind != Connective::Atom) {
        throw std::logic_error("atom_name() called on a non-atom formula");
    }
    return node_->name;
}

const Formula& Formula::left() const {
    if (!node_->left.node_) {
        throw std::logic_error("left() called on a leaf formula");
    }
    return node_->left;
}

const Formula& Formula::right() const {
    if (!node_->right.node_) {
        throw std::logic_error("right() called on a non-binary formula");
    }
    return node_->right;
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (!node_ || !other.node_) return false;
    if (node_->hash != other.node_->hash) return false;
    if (node_->kind != other.node_->kind) return false;
    switch (node_->kind) {
    case Connective::True:
    case Connective::False:
        return true;
    case Connective::Atom:
        return node_->name == other.node_->name;
    case Connective::Not:
        return node_->left == other.node_->left;
    default:
        return node_->left == other.node_->left && node_->right == other.node_->right;
    }
}

bool is_valid_atom_name(std::string_view name) {
    if (name.empty()) return false;
    if (name == "true" || name == "false") return false;
    if (!std::isalpha(static_cast<unsigned char>(name.front()))) return false;
    for (char c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int precedence(Connective kind) {
    switch (kind) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    default: return 6; // atoms and constants
    }
}

void print(std::ostream& os, const Formula& f);

// Parenthesize a child when reparsing would otherwise group it differently.
void print_child(std::ostream& os, const Formula& child, int parent_prec, bool needs_parens_on_tie) {
    int child_prec = precedence(child.kind());
    bool parens = child_prec < parent_prec || (child_prec == parent_prec && needs_parens_on_tie);
    if (parens) os << '(';
    print(os, child);
    if (parens) os << ')';
}

void print(std::ostream& os, const Formula& f) {
    switch (f.kind()) {
    case Connective::True: os << "true"; return;
    case Connective::False: os << "false"; return;
    case Connective::Atom: os << f.atom_name(); return;
    case Connective::Not:
        os << '~';
        print_child(os, f.left(), precedence(Connective::Not), false);
        return;
    case Connective::And:
    case Connective::Or: {
        // Left-associative: the right child needs parentheses on a tie.
        int prec = precedence(f.kind());
        print_child(os, f.left(), prec, false);
        os << (f.kind() == Connective::And ? " & " : " | ");
        print_child(os, f.right(), prec, true);
        return;
    }
    case Connective::Implies:
    case Connective::Iff: {
        // Right-associative: the left child needs parentheses on a tie.
        int prec = precedence(f.kind());
        print_child(os, f.left(), prec, true);
        os << (f.kind() == Connective::Implies ? " -> " : " <-> ");
        print_child(os, f.right(), prec, false);
        return;
    }
    }
}

} // namespace

std::string format_formula(const Formula& f) {
    std::ostringstream os;
    print(os, f);
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
    print(os, f);
    return os;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = parse_iff();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
        return f;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view token) {
        skip_ws();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    // '->' must not shadow the '-' in '<->': only called after skip_ws, and
    // '<->' is always attempted by the caller one level up, so a plain prefix
    // match is enough here.
    Formula parse_iff() {
        Formula lhs = parse_implies();
        if (consume("<->")) {
            return Formula::biconditional(std::move(lhs), parse_iff());
        }
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        skip_ws();
        // Guard: "<->" starts with '<', not '-', so matching "->" is safe.
        if (consume("->")) {
            return Formula::implication(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '|') {
                ++pos_;
                lhs = Formula::disjunction(std::move(lhs), parse_and());
            } else {
                return lhs;
            }
        }
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '&') {
                ++pos_;
                lhs = Formula::conjunction(std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Formula parse_unary() {
        skip_ws();
        if (pos_ < text_.size() && (text_[pos_] == '~' || text_[pos_] == '!')) {
            ++pos_;
            return Formula::negation(parse_unary());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Formula inner = parse_iff();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                throw ParseError("expected ')'", pos_);
            }
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string_view word = text_.substr(start, pos_ - start);
            if (word == "true") return Formula::verum();
            if (word == "false") return Formula::falsum();
            return Formula::atom(std::string(word));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
};

} // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Atoms and evaluation
// ---------------------------------------------------------------------------

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
    case Connective::True:
    case Connective::False:
        return;
    case Connective::Atom:
        out.insert(f.atom_name());
        return;
    case Connective::Not:
        collect_atoms(f.left(), out);
        return;
    default:
        collect_atoms(f.left(), out);
        collect_atoms(f.right(), out);
        return;
    }
}

} // namespace

std::set<std::string> atoms(const Formula& f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

std::set<std::string> atoms(std::span<const Formula> fs) {
    std::set<std::string> out;
    for (const Formula& f : fs) collect_atoms(f, out);
    return out;
}

bool evaluate(const Formula& f, const Valuation& v) {
    switch (f.kind()) {
    case Connective::True: return true;
    case Connective::False: return false;
    case Connective::Atom: {
        auto it = v.find(f.atom_name());
        if (it == v.end()) {
            throw std::invalid_argument("valuation does not assign atom '" + f.atom_name() + "'");
        }
        return it->second;
    }
    case Connective::Not: return !evaluate(f.left(), v);
    case Connective::And: return evaluate(f.left(), v) && evaluate(f.right(), v);
    case Connective::Or: return evaluate(f.left(), v) || evaluate(f.right(), v);
    case Connective::Implies: return !evaluate(f.left(), v) || evaluate(f.right(), v);
    case Connective::Iff: return evaluate(f.left(), v) == evaluate(f.right(), v);
    }
    throw std::logic_error("unreachable formula kind");
}

} // namespace jagg
