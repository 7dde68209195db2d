#pragma once

namespace jagg {

// Bounds for the exponential-cost primitives. Everything in this library is
// exact, so instead of approximating we refuse (with ResourceLimitError) once
// a search would exceed these limits. Callers that knowingly run larger
// instances can pass a custom Limits value.
struct Limits {
    // Maximum number of distinct atoms a consistency check or model
    // enumeration will handle (cost is 2^atoms).
    int max_atoms = 24;

    // Maximum number of branch states explored by the ranked-agenda rule when
    // walking the tie blocks of the support order.
    long long max_ra_orders = 1'000'000;

    // Guard for the Full-Hamming rule: the search space is |J_A|^n candidate
    // profiles; refuse when that product exceeds this bound.
    long long max_full_h_states = 10'000'000;

    // Maximum preagenda size for the bipartition refinement used when
    // searching for the finest independent partition (cost is 2^(m-1) per
    // refinement step).
    int max_partition_issues = 16;

    // Maximum number of covering block pairs the overlapping-decomposition
    // search will enumerate (there are 3^m of them).
    long long max_iod_candidates = 100'000;
};

} // namespace jagg
