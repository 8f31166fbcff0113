#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/election.hpp"
#include "copeland/io.hpp"

namespace copeland {

// Realize an arbitrary vs matrix. All off-diagonal targets must share one parity; an odd
// target gets one ascending-order base voter, then every pair is topped up with
// head/tail McGarvey pairs (each pair moves exactly one vs entry by 2).
inline Election realize_vs(std::vector<std::string> names, const Tally& target) {
    int m = static_cast<int>(names.size());
    if (target.m != m) throw std::invalid_argument("target size mismatch");
    int parity = -1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (target(i, j) != -target(j, i)) throw std::invalid_argument("target vs not antisymmetric");
            int p = static_cast<int>(((target(i, j) % 2) + 2) % 2);
            if (parity >= 0 && p != parity) throw std::invalid_argument("target vs entries of mixed parity");
            parity = p;
        }
    std::vector<VoterBlock> voters;
    Tally base(m);
    if (parity == 1) {
        auto asc = Preference::order(all_candidates(m));
        voters.push_back({asc, 1});
        base.add(asc, 1);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int64_t need = target(i, j) - base(i, j);
            if (need == 0) continue;
            int a = need > 0 ? i : j, b = need > 0 ? j : i;
            int64_t r = (need > 0 ? need : -need) / 2;
            voters.push_back({Preference::pair_head(m, a, b), r});
            voters.push_back({Preference::pair_tail(m, a, b), r});
        }
    return Election(std::move(names), std::move(voters));
}

// Two voters per decisive pair: a > b > rest and reverse(rest) > a > b.
inline Election mcgarvey(const NamedCot& t) {
    int m = t.cot.size();
    std::vector<VoterBlock> voters;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int g = t.cot.sign(i, j);
            if (g == 0) continue;
            int a = g > 0 ? i : j, b = g > 0 ? j : i;
            voters.push_back({Preference::pair_head(m, a, b), 1});
            voters.push_back({Preference::pair_tail(m, a, b), 1});
        }
    return Election(t.names, std::move(voters));
}

inline std::vector<std::string> numbered(const std::string& prefix, int count) {
    std::vector<std::string> v;
    for (int i = 0; i < count; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

inline Cot pad_cot(int n) {
    if (n < 1) throw std::invalid_argument("pad size must be positive");
    int N = 2 * n + 1;
    Cot c(N);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            int d = (j - i) % N;
            if (d <= n)
                c.set_win(i, j);
            else
                c.set_win(j, i);
        }
    return c;
}

inline Election pad_election(int n, const std::string& prefix = "d") {
    Cot c = pad_cot(n);
    return mcgarvey({numbered(prefix, c.size()), c});
}

// Targeted-score election: the first n' ids are the original candidates,
// followed by 2n^2 padding candidates in groups of 2n.
struct TargetedPlan {
    std::vector<std::string> names;
    Tally vs;  // full target vs matrix
    int original = 0;
    int n = 0;
    int padding_begin() const { return original; }
    int group_begin(int i) const { return original + i * 2 * n; }  // group of original candidate i (0-based)
};

// Builds the vs matrix: core entries copied from `core`, padding entries +-unit.
// unit is 1 when the core vs parity is odd, else 2.
inline TargetedPlan targeted_plan(const std::vector<std::string>& core_names, const Tally& core, int n,
                                  const std::vector<int>& k, const std::string& prefix = "pad") {
    int np = core.m;
    if (static_cast<int>(core_names.size()) != np || static_cast<int>(k.size()) != np)
        throw std::invalid_argument("targeted: size mismatch");
    if (n < np || n < 1) throw std::invalid_argument("targeted: n must be at least the candidate count");
    int64_t unit = 2;
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j)
            if (core(i, j) % 2 != 0) unit = 1;
    Cot pad = pad_cot(n * n);
    int D = 2 * n * n;
    int M = np + D;
    TargetedPlan plan;
    plan.original = np;
    plan.n = n;
    plan.names = core_names;
    for (auto& s : numbered(prefix, D)) plan.names.push_back(s);
    plan.vs = Tally(M);
    auto set = [&](int a, int b, int64_t v) {
        plan.vs.vs[a * M + b] = v;
        plan.vs.vs[b * M + a] = -v;
    };
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) set(i, j, core(i, j));
    for (int x = 0; x < D; ++x)
        for (int y = x + 1; y < D; ++y) set(np + x, np + y, pad.sign(x, y) * unit);
    for (int i = 0; i < np; ++i) {
        if (k[i] < 0 || k[i] > n) throw std::invalid_argument("targeted: k_i out of range");
        int wins = 0;
        for (int j = 0; j < np; ++j)
            if (j != i && core(i, j) > 0) ++wins;
        int x = 2 * n - k[i] - wins;
        if (x < 0 || x > 2 * n) throw std::invalid_argument("targeted: infeasible k_i");
        for (int g = 0; g < n; ++g)
            for (int t = 0; t < 2 * n; ++t) {
                int d = np + g * 2 * n + t;
                bool win = (g != i) || (t < x);
                set(i, d, win ? unit : -unit);
            }
    }
    return plan;
}

// Variant with ties: core candidate i ends with exactly wins[i] wins and ties[i] ties
// overall. Padding contests are +-unit or 0, so a nonzero tie count needs an even unit
// (and even core entries). Results against the own group are filled wins, ties, losses;
// whatever does not fit there spills into the other groups (losses first).
inline TargetedPlan scored_plan(const std::vector<std::string>& core_names, const Tally& core, int n,
                                const std::vector<int64_t>& wins, const std::vector<int64_t>& ties, int64_t unit,
                                const std::string& prefix = "pad") {
    int np = core.m;
    if (static_cast<int>(core_names.size()) != np || static_cast<int>(wins.size()) != np ||
        static_cast<int>(ties.size()) != np)
        throw std::invalid_argument("scored: size mismatch");
    if (n < np || n < 1) throw std::invalid_argument("scored: n must be at least the candidate count");
    if (unit <= 0) throw std::invalid_argument("scored: unit must be positive");
    Cot pad = pad_cot(n * n);
    int D = 2 * n * n;
    int M = np + D;
    TargetedPlan plan;
    plan.original = np;
    plan.n = n;
    plan.names = core_names;
    for (auto& s : numbered(prefix, D)) plan.names.push_back(s);
    plan.vs = Tally(M);
    auto set = [&](int a, int b, int64_t v) {
        plan.vs.vs[static_cast<size_t>(a) * M + b] = v;
        plan.vs.vs[static_cast<size_t>(b) * M + a] = -v;
    };
    for (int i = 0; i < np; ++i)
        for (int j = i + 1; j < np; ++j) set(i, j, core(i, j));
    for (int x = 0; x < D; ++x)
        for (int y = x + 1; y < D; ++y) set(np + x, np + y, pad.sign(x, y) * unit);
    for (int i = 0; i < np; ++i) {
        int64_t cw = 0, ct = 0;
        for (int j = 0; j < np; ++j)
            if (j != i) {
                if (core(i, j) > 0) ++cw;
                if (core(i, j) == 0) ++ct;
            }
        int64_t W = wins[i] - cw, T = ties[i] - ct, L = D - W - T;
        if (W < 0 || T < 0 || L < 0) throw std::invalid_argument("scored: infeasible target for " + core_names[i]);
        if (T > 0 && unit % 2 != 0) throw std::invalid_argument("scored: ties need an even unit");
        int64_t own = 2 * n;
        int64_t lo = std::min(L, own), to = std::min(T, own - lo), wo = own - lo - to;
        int64_t lx = L - lo, tx = T - to;
        int g0 = i * 2 * n;
        for (int t = 0; t < own; ++t) {
            int d = np + g0 + t;
            set(i, d, t < wo ? unit : (t < wo + to ? 0 : -unit));
        }
        for (int x = 0; x < D; ++x) {
            if (x >= g0 && x < g0 + own) continue;
            int d = np + x;
            if (lx > 0) {
                set(i, d, -unit);
                --lx;
            } else if (tx > 0) {
                set(i, d, 0);
                --tx;
            } else {
                set(i, d, unit);
            }
        }
    }
    return plan;
}

inline Election targeted_election(const Election& e, int n, const std::vector<int>& k) {
    auto plan = targeted_plan(e.names(), e.tally(), n, k);
    return realize_vs(plan.names, plan.vs);
}

enum class Cross { FirstWins, SecondWins, Tie };

// Merge two elections at the outcome-table level; cross[i][j] decides (E1_i, E2_j).
inline Election combine(const Election& e1, const Election& e2, const std::vector<std::vector<Cross>>& cross) {
    int m1 = e1.m(), m2 = e2.m();
    if (static_cast<int>(cross.size()) != m1) throw std::invalid_argument("cross spec must cover every pair");
    for (const auto& row : cross)
        if (static_cast<int>(row.size()) != m2) throw std::invalid_argument("cross spec must cover every pair");
    std::vector<std::string> names = e1.names();
    for (const auto& n : e2.names()) {
        if (e1.index_of(n) >= 0) throw std::invalid_argument("name collision: " + n);
        names.push_back(n);
    }
    Cot c(m1 + m2);
    Cot c1 = outcome_table(e1), c2 = outcome_table(e2);
    for (int i = 0; i < m1; ++i)
        for (int j = i + 1; j < m1; ++j) c.set(i, j, c1.sign(i, j));
    for (int i = 0; i < m2; ++i)
        for (int j = i + 1; j < m2; ++j) c.set(m1 + i, m1 + j, c2.sign(i, j));
    for (int i = 0; i < m1; ++i)
        for (int j = 0; j < m2; ++j)
            c.set(i, m1 + j, cross[i][j] == Cross::FirstWins ? 1 : cross[i][j] == Cross::SecondWins ? -1 : 0);
    return mcgarvey({names, c});
}

// Two table voters: agree on decisive pairs, disagree on ties.
inline Election two_voter_realization(const NamedCot& t) {
    int m = t.cot.size();
    std::vector<uint8_t> b1(static_cast<size_t>(m) * m, 0), b2(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int g = t.cot.sign(i, j);
            if (g > 0) {
                b1[i * m + j] = b2[i * m + j] = 1;
            } else if (g < 0) {
                b1[j * m + i] = b2[j * m + i] = 1;
            } else {
                b1[i * m + j] = 1;
                b2[j * m + i] = 1;
            }
        }
    std::vector<VoterBlock> v{{Preference::table(m, std::move(b1)), 1}, {Preference::table(m, std::move(b2)), 1}};
    return Election(t.names, std::move(v));
}

}  // namespace copeland
