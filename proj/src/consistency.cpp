#include "jagg/consistency.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "jagg/errors.hpp"

namespace jagg {

namespace {

// Formulas compiled to postorder instruction lists over atom indices, so the
// exponential sweeps below do not repeatedly walk shared_ptr trees or look up
// atom names.
constexpr int kMaxEvalStack = 256;

struct Compiled {
    struct Instr {
        Connective op;
        int atom = -1; // Atom only
    };
    std::vector<Instr> code;

    // Three-valued evaluation under a partial assignment. `mask` bit i set
    // means atom i is assigned; `values` bit i gives its value. Returns
    // -1 (unknown), 0 (false) or 1 (true).
    int eval_partial(std::uint32_t mask, std::uint32_t values) const {
        signed char stack[kMaxEvalStack];
        int top = 0;
        for (const Instr& ins : code) {
            switch (ins.op) {
            case Connective::True: stack[top++] = 1; break;
            case Connective::False: stack[top++] = 0; break;
            case Connective::Atom:
                stack[top++] = (mask >> ins.atom) & 1U
                                   ? static_cast<signed char>((values >> ins.atom) & 1U)
                                   : static_cast<signed char>(-1);
                break;
            case Connective::Not: {
                signed char a = stack[top - 1];
                stack[top - 1] = a < 0 ? a : static_cast<signed char>(1 - a);
                break;
            }
            case Connective::And: {
                signed char b = stack[--top];
                signed char a = stack[top - 1];
                stack[top - 1] = (a == 0 || b == 0) ? 0 : (a == 1 && b == 1) ? 1 : -1;
                break;
            }
            case Connective::Or: {
                signed char b = stack[--top];
                signed char a = stack[top - 1];
                stack[top - 1] = (a == 1 || b == 1) ? 1 : (a == 0 && b == 0) ? 0 : -1;
                break;
            }
            case Connective::Implies: {
                signed char b = stack[--top];
                signed char a = stack[top - 1];
                stack[top - 1] = (a == 0 || b == 1) ? 1 : (a == 1 && b == 0) ? 0 : -1;
                break;
            }
            case Connective::Iff: {
                signed char b = stack[--top];
                signed char a = stack[top - 1];
                stack[top - 1] = (a < 0 || b < 0) ? -1 : (a == b) ? 1 : 0;
                break;
            }
            }
        }
        return stack[0];
    }
};

// Returns the evaluation stack depth the emitted code needs.
int compile_into(const Formula& f, const std::map<std::string, int>& atom_index,
                 std::vector<Compiled::Instr>& code) {
    switch (f.kind()) {
    case Connective::True:
    case Connective::False:
        code.push_back({f.kind()});
        return 1;
    case Connective::Atom:
        code.push_back({Connective::Atom, atom_index.at(f.atom_name())});
        return 1;
    case Connective::Not: {
        int d = compile_into(f.left(), atom_index, code);
        code.push_back({Connective::Not});
        return d;
    }
    default: {
        int dl = compile_into(f.left(), atom_index, code);
        int dr = compile_into(f.right(), atom_index, code);
        code.push_back({f.kind()});
        return std::max(dl, dr + 1);
    }
    }
}

struct Problem {
    std::vector<std::string> atom_names; // sorted
    std::vector<Compiled> formulas;      // fs followed by gamma
};

Problem build_problem(std::span<const Formula> fs, const Formula& gamma, const Limits& limits) {
    std::set<std::string> names = atoms(fs);
    for (const std::string& a : atoms(gamma)) names.insert(a);
    if (static_cast<int>(names.size()) > limits.max_atoms) {
        throw ResourceLimitError("consistency check over " + std::to_string(names.size()) +
                                 " atoms exceeds the configured limit of " +
                                 std::to_string(limits.max_atoms));
    }
    Problem p;
    p.atom_names.assign(names.begin(), names.end());
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < p.atom_names.size(); ++i) {
        index[p.atom_names[i]] = static_cast<int>(i);
    }
    p.formulas.reserve(fs.size() + 1);
    auto add = [&](const Formula& f) {
        Compiled c;
        int depth = compile_into(f, index, c.code);
        if (depth > kMaxEvalStack) {
            throw ResourceLimitError("formula nesting too deep to evaluate");
        }
        p.formulas.push_back(std::move(c));
    };
    for (const Formula& f : fs) add(f);
    add(gamma);
    return p;
}

// Depth-first search over atom assignments; a branch dies as soon as one
// formula is definitely false under the partial assignment.
bool satisfiable(const Problem& p, int next_atom, std::uint32_t mask, std::uint32_t values) {
    bool all_true = true;
    for (const Compiled& f : p.formulas) {
        int v = f.eval_partial(mask, values);
        if (v == 0) return false;
        if (v < 0) all_true = false;
    }
    if (all_true) return true;
    if (next_atom >= static_cast<int>(p.atom_names.size())) return false;
    std::uint32_t bit = 1U << next_atom;
    return satisfiable(p, next_atom + 1, mask | bit, values) ||
           satisfiable(p, next_atom + 1, mask | bit, values | bit);
}

} // namespace

bool is_consistent(std::span<const Formula> fs, const Formula& gamma, const Limits& limits) {
    Problem p = build_problem(fs, gamma, limits);
    return satisfiable(p, 0, 0, 0);
}

std::vector<Valuation> enumerate_models(std::span<const Formula> fs, const Formula& gamma,
                                        const Limits& limits) {
    Problem p = build_problem(fs, gamma, limits);
    const int k = static_cast<int>(p.atom_names.size());
    std::vector<Valuation> models;
    // Counter bit (k - 1 - i) drives atom i, so the alphabetically first atom
    // is the most significant bit: valuations come out in lexicographic order
    // over the sorted atom names with false before true.
    for (std::uint64_t counter = 0; counter < (1ULL << k); ++counter) {
        std::uint32_t values = 0;
        for (int i = 0; i < k; ++i) {
            if ((counter >> (k - 1 - i)) & 1ULL) values |= 1U << i;
        }
        std::uint32_t full = k == 32 ? ~0U : (1U << k) - 1U;
        bool ok = true;
        for (const Compiled& f : p.formulas) {
            if (f.eval_partial(full, values) != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Valuation v;
        for (int i = 0; i < k; ++i) {
            v[p.atom_names[i]] = ((values >> i) & 1U) != 0;
        }
        models.push_back(std::move(v));
    }
    return models;
}

} // namespace jagg
