#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jagg/agenda.hpp"
#include "jagg/decomposition.hpp"
#include "jagg/limits.hpp"
#include "jagg/rules.hpp"

namespace jagg {

// Outcome of one separability check on one concrete instance.
//   Holds               - the direct outcome equals the blockwise recombination;
//   PremiseNotSatisfied - (overlapping checks only) some pair of block
//                         outcomes disagrees on the shared issues, so the
//                         property places no demand on this instance;
//   Violated            - the premise holds (or is vacuous) and the direct
//                         outcome differs from the recombination.
enum class Verdict { Holds, PremiseNotSatisfied, Violated };

std::string to_string(Verdict v);

// The two sides of a failed comparison, both in canonical order over the
// full agenda.
struct SeparabilityWitness {
    std::vector<JudgmentSet> direct;     // rule applied to the whole profile
    std::vector<JudgmentSet> recombined; // glued blockwise outcomes
};

struct SeparabilityReport {
    RuleId rule;
    Decomposition decomposition;
    Verdict verdict = Verdict::Holds;
    std::optional<SeparabilityWitness> witness; // engaged iff verdict == Violated
};

// Does the rule's outcome on `p` factor through the disjoint blocks of `d`?
// There is no premise: the direct outcome must equal the set of all
// cross-block glues. `d` must be Trivial (always Holds) or Partition, and
// `p` must be over `d`'s agenda (std::invalid_argument otherwise).
SeparabilityReport check_as_instance(RuleId rule, const Profile& p, const Decomposition& d,
                                     const Limits& limits = {});

// Overlapping variant for a two-block decomposition (Overlapping kind, or a
// two-block Partition whose empty overlap makes the premise vacuous, or
// Trivial which always Holds). When every pair of blockwise outcomes agrees
// on the shared issues, the direct outcome must equal the set of glues;
// otherwise the instance decides nothing and is reported as
// PremiseNotSatisfied.
SeparabilityReport check_oas_instance(RuleId rule, const Profile& p, const Decomposition& d,
                                      const Limits& limits = {});

// Is the scoring function local to the blocks of `d`? True iff for every
// complete consistent judgment set J over the agenda, every block, and every
// signed issue of that block, the score equals the score of J's restriction
// to the block (evaluated over the sub-agenda). `d` must be Trivial
// (vacuously true) or Partition.
bool check_scoring_separability(const ScoringFunction& s, const Decomposition& d,
                                const Limits& limits = {});

// `members` judgment sets drawn uniformly with replacement from the
// consistent complete sets of `a`; reproducible per seed.
Profile random_profile(const Agenda& a, std::size_t members, std::uint64_t seed,
                       const Limits& limits = {});

// A randomly generated agenda built from syntactically disjoint blocks
// (each block's issues use its own private atoms, the constraint is the
// truth constant) together with its certified blockwise decomposition.
struct DecomposableAgenda {
    Agenda agenda;
    Decomposition decomposition; // Partition, or Trivial when blocks == 1
};

// `issues_per_block` of 0 draws one or two issues per block at random;
// any other value fixes the exact issue count of every block (useful for
// benchmarks, where the gap between the joint candidate space and the
// per-block candidate spaces should be wide).
DecomposableAgenda random_decomposable_agenda(std::size_t blocks, std::size_t atoms_per_block,
                                              std::uint64_t seed, const Limits& limits = {},
                                              std::size_t issues_per_block = 0);

// Default limits for the property suite: identical to Limits{} except that
// the Full-Hamming state guard admits the largest instances the suite
// generates (up to |J_A|^n = 64^5).
Limits suite_limits();

struct SuiteConfig {
    std::size_t trials = 200;        // random instances per property section
    std::uint64_t seed = 0;          // master seed; per-trial seeds derive from it
    std::size_t max_blocks = 3;      // random partitions use 2..max_blocks blocks
    std::size_t atoms_per_block = 2;
    std::vector<std::size_t> profile_sizes = {1, 3, 5}; // cycled across trials
    std::size_t rev_hunt_trials = 100; // budget for the reversal-scoring hunt
    std::size_t max_witnesses = 3;     // failure details retained per section
    Limits limits = suite_limits();
};

struct SuiteSection {
    std::string name;
    std::size_t checks = 0;        // rule/instance combinations examined
    std::size_t premise_skips = 0; // overlapping checks whose premise failed
    std::size_t failures = 0;      // expectation mismatches
    std::vector<std::string> details; // first few failure descriptions
};

struct SuiteReport {
    std::vector<SuiteSection> sections;

    // Engaged when the hunt finds a profile on which the reversal-scoring
    // rule's overlapping recombination differs from its direct outcome
    // under a satisfied premise. Absence within budget proves nothing.
    std::optional<std::string> reversal_counterexample;

    bool passed() const; // no section recorded a failure
};

std::string to_string(const SuiteReport& report);

// Randomized and fixed-instance checks of the separability properties:
//   - the six block-factoring rules (mc, mcc, ra, med, rev, full_h) factor
//     through every sampled certified partition;
//   - rmax fails on the fixed four-issue instance, with the exact witness;
//   - mc and ra are never Violated on sampled two-block decompositions with
//     overlap, and empty-overlap instances never report PremiseNotSatisfied;
//   - mcc, med, full_h and rev are Violated on the fixed eight-issue
//     overlapping instance, mc reports PremiseNotSatisfied there;
//   - default lexicographic tie-breaking preserves factoring for the six
//     rules, and a crafted non-separable tie-breaker breaks it;
//   - the median and reversal scorings are block-local on sampled
//     partitions, a crafted non-local scoring is not;
//   - a budgeted hunt for a reversal-scoring overlapping counterexample.
SuiteReport run_property_suite(const SuiteConfig& config = {});

} // namespace jagg
