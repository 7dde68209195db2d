#include "oracle.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>

using namespace jagg;

namespace oracle {

bool truth_table_consistent(const std::vector<Formula>& fs, const Formula& gamma) {
    std::set<std::string> names = atoms(std::span<const Formula>(fs));
    for (const std::string& a : atoms(gamma)) names.insert(a);
    std::vector<std::string> atom_list(names.begin(), names.end());
    const std::size_t k = atom_list.size();
    for (std::uint64_t bits = 0; bits < (1ULL << k); ++bits) {
        Valuation v;
        for (std::size_t i = 0; i < k; ++i) {
            v[atom_list[i]] = ((bits >> i) & 1ULL) != 0;
        }
        bool ok = evaluate(gamma, v);
        for (std::size_t i = 0; ok && i < fs.size(); ++i) {
            ok = evaluate(fs[i], v);
        }
        if (ok) return true;
    }
    return false;
}

namespace {

bool judgment_consistent(const JudgmentSet& j) {
    return truth_table_consistent(j.formulas(), j.agenda().constraint());
}

} // namespace

std::vector<JudgmentSet> canonical(std::vector<JudgmentSet> sets) {
    std::sort(sets.begin(), sets.end(), JudgmentSet::sign_less);
    sets.erase(std::unique(sets.begin(), sets.end(),
                           [](const JudgmentSet& a, const JudgmentSet& b) { return a == b; }),
               sets.end());
    return sets;
}

bool same_outputs(const std::vector<JudgmentSet>& a, const std::vector<JudgmentSet>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return false;
    }
    return true;
}

std::string render(const std::vector<JudgmentSet>& sets) {
    std::string out = "{";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) out += ", ";
        out += sign_string(sets[i]);
    }
    return out + "}";
}

std::vector<JudgmentSet> all_complete_consistent(const Agenda& a) {
    const std::size_t m = a.size();
    std::vector<JudgmentSet> out;
    for (std::uint64_t bits = 0; bits < (1ULL << m); ++bits) {
        std::vector<Sign> signs(m);
        for (std::size_t i = 0; i < m; ++i) {
            signs[i] = ((bits >> i) & 1ULL) ? Sign::Positive : Sign::Negative;
        }
        JudgmentSet j(a, std::move(signs));
        if (judgment_consistent(j)) out.push_back(std::move(j));
    }
    return canonical(std::move(out));
}

namespace {

std::vector<JudgmentSet> consistent_subsets_by_mask(const JudgmentSet& s,
                                                    std::vector<std::uint64_t>& masks_out) {
    std::vector<std::size_t> positions = s.assigned_indices();
    const std::size_t a = positions.size();
    std::vector<JudgmentSet> subsets;
    for (std::uint64_t bits = 0; bits < (1ULL << a); ++bits) {
        std::vector<Sign> signs(s.size(), Sign::Absent);
        for (std::size_t t = 0; t < a; ++t) {
            if ((bits >> t) & 1ULL) signs[positions[t]] = s.at(positions[t]);
        }
        JudgmentSet sub(s.agenda(), std::move(signs));
        if (judgment_consistent(sub)) {
            subsets.push_back(std::move(sub));
            masks_out.push_back(bits);
        }
    }
    return subsets;
}

} // namespace

std::vector<JudgmentSet> maximal_subsets(const JudgmentSet& s) {
    std::vector<std::uint64_t> masks;
    std::vector<JudgmentSet> subsets = consistent_subsets_by_mask(s, masks);
    std::vector<JudgmentSet> maximal;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        bool is_max = true;
        for (std::size_t k = 0; k < subsets.size(); ++k) {
            if (i != k && (masks[i] & masks[k]) == masks[i] && masks[i] != masks[k]) {
                is_max = false;
                break;
            }
        }
        if (is_max) maximal.push_back(subsets[i]);
    }
    return canonical(std::move(maximal));
}

std::vector<JudgmentSet> maxcard_subsets(const JudgmentSet& s) {
    std::vector<std::uint64_t> masks;
    std::vector<JudgmentSet> subsets = consistent_subsets_by_mask(s, masks);
    std::size_t best = 0;
    for (const JudgmentSet& sub : subsets) best = std::max(best, sub.assigned_count());
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& sub : subsets) {
        if (sub.assigned_count() == best) out.push_back(sub);
    }
    return canonical(std::move(out));
}

std::vector<JudgmentSet> extensions(const JudgmentSet& s) {
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& j : all_complete_consistent(s.agenda())) {
        bool agrees = true;
        for (std::size_t i = 0; agrees && i < s.size(); ++i) {
            if (s.at(i) != Sign::Absent && s.at(i) != j.at(i)) agrees = false;
        }
        if (agrees) out.push_back(j);
    }
    return out;
}

namespace {

int distance(const JudgmentSet& a, const JudgmentSet& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.at(i) != b.at(i)) ++d;
    }
    return d;
}

} // namespace

std::vector<JudgmentSet> rmax(const Agenda& a, const Profile& p) {
    std::vector<JudgmentSet> candidates = all_complete_consistent(a);
    int best = INT_MAX;
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& j : candidates) {
        int worst = 0;
        for (const JudgmentSet& member : p.members()) {
            worst = std::max(worst, distance(member, j));
        }
        if (worst < best) {
            best = worst;
            out.clear();
        }
        if (worst == best) out.push_back(j);
    }
    return canonical(std::move(out));
}

std::vector<JudgmentSet> med_by_distance(const Agenda& a, const Profile& p) {
    std::vector<JudgmentSet> candidates = all_complete_consistent(a);
    long long best = LLONG_MAX;
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& j : candidates) {
        long long total = 0;
        for (const JudgmentSet& member : p.members()) total += distance(member, j);
        if (total < best) {
            best = total;
            out.clear();
        }
        if (total == best) out.push_back(j);
    }
    return canonical(std::move(out));
}

std::vector<JudgmentSet> med_by_support(const Agenda& a, const Profile& p) {
    std::vector<JudgmentSet> candidates = all_complete_consistent(a);
    SupportTable table = support(p);
    long long best = LLONG_MIN;
    std::vector<JudgmentSet> out;
    for (const JudgmentSet& j : candidates) {
        long long total = 0;
        for (std::size_t i = 0; i < j.size(); ++i) total += table.count(i, j.at(i));
        if (total > best) {
            best = total;
            out.clear();
        }
        if (total == best) out.push_back(j);
    }
    return canonical(std::move(out));
}

std::vector<JudgmentSet> full_hamming(const Agenda& a, const Profile& p) {
    std::vector<JudgmentSet> candidates = all_complete_consistent(a);
    const std::size_t n = p.size();
    const std::size_t k = candidates.size();

    long long best = LLONG_MAX;
    std::vector<JudgmentSet> winners;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
        long long total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            total += distance(p.member(i), candidates[pick[i]]);
        }
        std::vector<JudgmentSet> members;
        for (std::size_t i = 0; i < n; ++i) members.push_back(candidates[pick[i]]);
        Profile q(a, std::move(members));
        if (is_majority_consistent(q)) {
            if (total < best) {
                best = total;
                winners.clear();
            }
            if (total == best) {
                for (const JudgmentSet& e : extensions(majority_set(q))) {
                    winners.push_back(e);
                }
            }
        }
        // odometer over J_A^n
        std::size_t pos = 0;
        while (pos < n && ++pick[pos] == k) {
            pick[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return canonical(std::move(winners));
}

std::vector<JudgmentSet> ranked_agenda(const Agenda& a, const Profile& p) {
    SupportTable table = support(p);
    const std::size_t m = a.size();

    struct Entry {
        std::size_t issue;
        Sign sign;
        int count;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < m; ++i) {
        entries.push_back({i, Sign::Positive, table.count(i, Sign::Positive)});
        entries.push_back({i, Sign::Negative, table.count(i, Sign::Negative)});
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& x, const Entry& y) { return x.count > y.count; });

    // Group into equal-support blocks.
    std::vector<std::vector<Entry>> blocks;
    for (const Entry& e : entries) {
        if (blocks.empty() || blocks.back().front().count != e.count) {
            blocks.emplace_back();
        }
        blocks.back().push_back(e);
    }

    std::vector<JudgmentSet> out;
    // Odometer over per-block permutations; each block's entries are permuted
    // with std::next_permutation over index vectors.
    std::vector<std::vector<std::size_t>> perms(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        perms[b].resize(blocks[b].size());
        std::iota(perms[b].begin(), perms[b].end(), 0);
    }

    auto run_greedy = [&]() {
        std::vector<Sign> signs(m, Sign::Absent);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t t : perms[b]) {
                const Entry& e = blocks[b][t];
                if (signs[e.issue] != Sign::Absent) continue;
                signs[e.issue] = e.sign;
                JudgmentSet trial(a, signs);
                if (!truth_table_consistent(trial.formulas(), a.constraint())) {
                    signs[e.issue] = Sign::Absent;
                }
            }
        }
        out.emplace_back(a, std::move(signs));
    };

    while (true) {
        run_greedy();
        std::size_t b = 0;
        while (b < blocks.size() && !std::next_permutation(perms[b].begin(), perms[b].end())) {
            // next_permutation wrapped this block back to sorted order; carry on
            b++;
        }
        if (b == blocks.size()) break;
    }
    return canonical(std::move(out));
}

bool iod_glue_closed(const Agenda& a, std::uint64_t first, std::uint64_t second) {
    std::vector<JudgmentSet> all = all_complete_consistent(a);
    std::set<std::string> everything;
    for (const JudgmentSet& j : all) everything.insert(sign_string(j));
    const std::size_t m = a.size();
    for (const JudgmentSet& x : all) {
        for (const JudgmentSet& y : all) {
            bool agree = true;
            for (std::size_t i = 0; i < m && agree; ++i) {
                if (((first >> i) & 1ULL) && ((second >> i) & 1ULL)) {
                    agree = x.at(i) == y.at(i);
                }
            }
            if (!agree) continue;
            std::string glue(m, '.');
            for (std::size_t i = 0; i < m; ++i) {
                glue[i] = to_char(((first >> i) & 1ULL) ? x.at(i) : y.at(i));
            }
            if (!everything.contains(glue)) return false;
        }
    }
    return true;
}

} // namespace oracle
