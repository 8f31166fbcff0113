#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "copeland/election.hpp"

namespace copeland {

enum class StageKind { PC, RPC, PV };

// Who advances from a first-stage subelection.
inline std::vector<int> survivors(const Tally& t, const Alpha& a, std::span<const int> subset, TieRule rule) {
    auto w = winners_within(t, a, subset, WinnerModel::Nonunique);
    if (rule == TieRule::TE && w.size() != 1) w.clear();
    return w;
}

inline std::vector<int> sorted_union(std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

// Final-round winner set for a partition of candidates (c1, c2) under PC or RPC.
inline std::vector<int> two_stage_candidates(const Tally& t, const Alpha& a, TieRule rule, StageKind kind,
                                             const std::vector<int>& c1, const std::vector<int>& c2) {
    std::vector<int> fin = survivors(t, a, c1, rule);
    if (kind == StageKind::PC)
        fin = sorted_union(fin, c2);
    else
        fin = sorted_union(fin, survivors(t, a, c2, rule));
    return winners_within(t, a, fin, WinnerModel::Nonunique);
}

// Voter partition: first[i] voters of block i go to the first subelection.
inline Tally first_part_tally(const Election& e, const std::vector<int64_t>& first) {
    if (first.size() != e.voters().size()) throw std::invalid_argument("partition size mismatch");
    std::vector<VoterBlock> part;
    for (size_t i = 0; i < first.size(); ++i) {
        if (first[i] < 0 || first[i] > e.voters()[i].mult) throw std::invalid_argument("not a partition of the voters");
        if (first[i] > 0) part.push_back({e.voters()[i].pref, first[i]});
    }
    Tally t(e.m());
    t.add_blocks(part);
    return t;
}

inline Tally complement_tally(const Tally& whole, const Tally& part) {
    Tally t(whole.m);
    for (size_t k = 0; k < t.vs.size(); ++k) t.vs[k] = whole.vs[k] - part.vs[k];
    return t;
}

inline std::vector<int> two_stage_voters_tallies(const Tally& whole, const Tally& t1, const Tally& t2, const Alpha& a,
                                                 TieRule rule) {
    auto all = all_candidates(whole.m);
    auto fin = sorted_union(survivors(t1, a, all, rule), survivors(t2, a, all, rule));
    return winners_within(whole, a, fin, WinnerModel::Nonunique);
}

inline std::vector<int> two_stage_voters(const Election& e, const Alpha& a, TieRule rule,
                                         const std::vector<int64_t>& first) {
    Tally t1 = first_part_tally(e, first);
    Tally t2 = complement_tally(e.tally(), t1);
    return two_stage_voters_tallies(e.tally(), t1, t2, a, rule);
}

// Generic entry point. For PC/RPC, part1/part2 are candidate ids; for PV, part1 holds
// per-block counts of the first subelection and part2 is ignored.
inline std::vector<int> two_stage_eval(const Election& e, const Alpha& a, TieRule rule, StageKind kind,
                                       const std::vector<int>& part1, const std::vector<int>& part2 = {}) {
    if (kind == StageKind::PV) {
        std::vector<int64_t> f(part1.begin(), part1.end());
        return two_stage_voters(e, a, rule, f);
    }
    std::vector<int> seen(e.m(), 0);
    for (int c : part1) {
        if (c < 0 || c >= e.m() || seen[c]++) throw std::invalid_argument("not a partition of the candidates");
    }
    for (int c : part2) {
        if (c < 0 || c >= e.m() || seen[c]++) throw std::invalid_argument("not a partition of the candidates");
    }
    for (int x : seen)
        if (x != 1) throw std::invalid_argument("not a partition of the candidates");
    return two_stage_candidates(e.tally(), a, rule, kind, part1, part2);
}

// Condorcet partition of voters where every subelection must elect exactly one winner.
struct CondorcetPvResult {
    bool admissible = false;
    std::optional<int> winner;
};

inline CondorcetPvResult condorcet_pv_from_tallies(const Tally& whole, const Tally& t1, const Tally& t2) {
    CondorcetPvResult r;
    auto w1 = condorcet_winner(t1);
    auto w2 = condorcet_winner(t2);
    if (!w1 || !w2) return r;
    r.admissible = true;
    std::vector<int> fin = sorted_union({*w1}, {*w2});
    r.winner = condorcet_winner_within(whole, fin);
    return r;
}

inline CondorcetPvResult condorcet_pv_eval(const Election& e, const std::vector<int64_t>& first) {
    Tally t1 = first_part_tally(e, first);
    Tally t2 = complement_tally(e.tally(), t1);
    return condorcet_pv_from_tallies(e.tally(), t1, t2);
}

}  // namespace copeland
