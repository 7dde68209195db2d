#pragma once

#include <span>
#include <vector>

#include "jagg/formula.hpp"
#include "jagg/limits.hpp"

namespace jagg {

// True iff some valuation over the atoms of fs and gamma satisfies every
// member of fs together with gamma. Backtracking search over atom
// assignments, pruning a branch as soon as any formula partially evaluates
// to false. Throws ResourceLimitError when the atom count exceeds
// limits.max_atoms.
bool is_consistent(std::span<const Formula> fs, const Formula& gamma, const Limits& limits = {});

// All valuations over the atoms of fs and gamma satisfying every member of
// fs together with gamma. The atom set is sorted by name and valuations are
// produced in lexicographic order over that atom sequence (false before
// true). Same resource bound as is_consistent.
std::vector<Valuation> enumerate_models(std::span<const Formula> fs, const Formula& gamma,
                                        const Limits& limits = {});

} // namespace jagg
