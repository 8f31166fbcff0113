#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/election.hpp"
#include "copeland/flow.hpp"

namespace copeland {

constexpr int64_t kInf = INT64_MAX / 4;

// One flipped table entry of one unit voter: afterwards `voter` prefers `winner` to `loser`.
struct Microbribe {
    int64_t voter;
    int winner, loser;
    friend bool operator==(const Microbribe&, const Microbribe&) = default;
};

enum class Goal { Constructive, Destructive };

inline bool odd_voters(const Election& e) { return e.total_voters() % 2 != 0; }

inline int64_t wincost_vs(int64_t v) { return v > 0 ? 0 : (1 - v + 1) / 2; }
inline int64_t tiecost_vs(int64_t v, bool odd) { return odd ? kInf : (v < 0 ? -v : v) / 2; }

inline int64_t wincost(const Election& e, int i, int j) {
    if (i == j) throw std::invalid_argument("wincost of a candidate against itself");
    return wincost_vs(e.vs(i, j));
}

inline int64_t tiecost(const Election& e, int i, int j) {
    if (i == j) throw std::invalid_argument("tiecost of a candidate against itself");
    return tiecost_vs(e.vs(i, j), odd_voters(e));
}

inline int64_t big_b(const Election& e) { return e.total_voters() * e.m() * e.m() + 1; }

// Target outcome of one contest: sign of vs(a,b) after bribery (+1 a wins, 0 tie).
struct ContestTarget {
    int a, b;
    int sign;
};

// Flips needed to move vs(a,b) to the target sign (0 if already there).
inline int64_t contest_cost(int64_t v, int sign) {
    if (sign > 0) return wincost_vs(v);
    if (sign < 0) return wincost_vs(-v);
    return (v < 0 ? -v : v) / 2;
}

// Realize contest targets with the cheapest flips, taking the lowest-indexed unit voters
// that currently prefer the side losing ground.
inline std::vector<Microbribe> realize_targets(const Election& e, const std::vector<ContestTarget>& targets) {
    std::vector<Microbribe> out;
    for (const auto& t : targets) {
        int64_t v = e.vs(t.a, t.b);
        if ((v % 2 != 0) && t.sign == 0) throw std::logic_error("tie requested with an odd electorate");
        int64_t r = contest_cost(v, t.sign);
        if (r == 0) continue;
        // Moving vs(a,b) up means flipping voters that prefer b over a, and vice versa.
        bool raise = (t.sign > 0) || (t.sign == 0 && v < 0);
        int from = raise ? t.b : t.a, to = raise ? t.a : t.b;
        int64_t unit = 0;
        for (const auto& blk : e.voters()) {
            if (r == 0) break;
            if (blk.pref.prefers(from, to)) {
                int64_t take = std::min(r, blk.mult);
                for (int64_t x = 0; x < take; ++x) out.push_back({unit + x, to, from});
                r -= take;
            }
            unit += blk.mult;
        }
        if (r != 0) throw std::logic_error("not enough voters to flip");
    }
    return out;
}

// Apply flips; unit voters that get bribed become their own table blocks.
inline Election apply_microbribes(const Election& e, const std::vector<Microbribe>& flips) {
    std::map<int64_t, std::vector<const Microbribe*>> by_voter;
    for (const auto& f : flips) {
        if (f.voter < 0 || f.voter >= e.total_voters()) throw std::out_of_range("microbribe voter out of range");
        by_voter[f.voter].push_back(&f);
    }
    std::vector<VoterBlock> out;
    int64_t base = 0;
    auto it = by_voter.begin();
    for (const auto& blk : e.voters()) {
        int64_t end = base + blk.mult;
        int64_t untouched = blk.mult;
        std::vector<VoterBlock> changed;
        for (; it != by_voter.end() && it->first < end; ++it) {
            Preference p = blk.pref.as_table();
            for (const auto* f : it->second)
                if (!p.prefers(f->winner, f->loser)) p = p.flipped(f->winner, f->loser);
            changed.push_back({std::move(p), 1});
            --untouched;
        }
        if (untouched > 0) out.push_back({blk.pref, untouched});
        for (auto& c : changed) out.push_back(std::move(c));
        base = end;
    }
    return e.with_voters(std::move(out));
}

struct MicrobriberyResult {
    bool supported = true;
    std::optional<int64_t> cost;  // minimum cost of a successful microbribery (absent: none exists)
    std::vector<Microbribe> witness;
};

// ---------------------------------------------------------------- flow networks

struct MicroNet {
    FlowNetwork net;
    int64_t F = 0;
    int64_t B = 0;
    int p_exit = -1;  // edge index carrying p's points to the sink
    struct Rule {
        int edge;
        ContestTarget target;
    };
    std::vector<Rule> rules;  // later rules override earlier ones for the same contest
};

namespace detail {

inline int rival_cap(int64_t T, WinnerModel model) {
    return static_cast<int>(model == WinnerModel::Unique ? T - 1 : T);
}

}  // namespace detail

// Odd electorate, any alpha.
inline MicroNet build_IT(const Election& e, int64_t T, int p = 0, WinnerModel model = WinnerModel::Nonunique) {
    if (!odd_voters(e)) throw std::invalid_argument("I(T) needs an odd number of voters");
    int m = e.m();
    MicroNet mn;
    mn.B = big_b(e);
    int s = m, t = m + 1;
    mn.net = FlowNetwork(m + 2, s, t);
    for (int i = 0; i < m; ++i) mn.net.label(i, e.name(i));
    mn.net.label(s, "s");
    mn.net.label(t, "t");
    for (int i = 0; i < m; ++i) {
        int64_t w = 0;
        for (int j = 0; j < m; ++j)
            if (j != i && e.vs(i, j) > 0) ++w;
        mn.net.add_edge(s, i, w, 0);
        mn.F += w;
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && e.vs(i, j) > 0) {
                int ed = mn.net.add_edge(i, j, 1, wincost(e, j, i));
                mn.rules.push_back({ed, {j, i, 1}});
            }
    for (int i = 0; i < m; ++i) {
        if (i == p)
            mn.p_exit = mn.net.add_edge(i, t, T, 0);
        else
            mn.net.add_edge(i, t, detail::rival_cap(T, model), mn.B);
    }
    return mn;
}

// Even electorate, alpha = 0.
inline MicroNet build_JT(const Election& e, int64_t T, int p = 0, WinnerModel model = WinnerModel::Nonunique) {
    if (odd_voters(e)) throw std::invalid_argument("J(T) needs an even number of voters");
    int m = e.m();
    MicroNet mn;
    mn.B = big_b(e);
    int s = m, t = m + 1;
    // Count auxiliary nodes first.
    std::vector<std::pair<int, int>> cij;
    std::vector<int> ci0;
    for (int i = 0; i < m; ++i) {
        if (i == p) continue;
        for (int j = 0; j < m; ++j)
            if (j != p && j != i && e.vs(i, j) > 0) cij.push_back({i, j});
        if (e.vs(i, p) >= 0) ci0.push_back(i);
    }
    int N = m + 2 + static_cast<int>(cij.size() + ci0.size());
    mn.net = FlowNetwork(N, s, t);
    for (int i = 0; i < m; ++i) mn.net.label(i, e.name(i));
    mn.net.label(s, "s");
    mn.net.label(t, "t");
    int next = m + 2;
    for (int i = 0; i < m; ++i) {
        int64_t w = 0;
        for (int j = 0; j < m; ++j)
            if (j != i && e.vs(i, j) > 0) ++w;
        mn.net.add_edge(s, i, w, 0);
        mn.F += w;
    }
    for (auto [i, j] : cij) {
        int node = next++;
        mn.net.label(node, e.name(i) + "_" + e.name(j));
        int ed = mn.net.add_edge(i, node, 1, tiecost(e, j, i));
        mn.net.add_edge(node, t, 1, mn.B);
        mn.rules.push_back({ed, {i, j, 0}});
    }
    std::vector<std::pair<int, int>> later;  // (edge into p, candidate) rules applied last
    for (int i : ci0) {
        int node = next++;
        mn.net.label(node, e.name(i) + "_" + e.name(p));
        if (e.vs(i, p) > 0) {
            int ed = mn.net.add_edge(i, node, 1, tiecost(e, p, i));
            mn.rules.push_back({ed, {p, i, 0}});
        } else {
            mn.net.add_edge(s, node, 1, 0);
            mn.F += 1;
        }
        int ed = mn.net.add_edge(node, p, 1, wincost(e, p, i) - tiecost(e, p, i));
        later.push_back({ed, i});
        mn.net.add_edge(node, t, 1, mn.B);
    }
    for (auto [ed, i] : later) mn.rules.push_back({ed, {p, i, 1}});
    for (int i = 0; i < m; ++i) {
        if (i == p)
            mn.p_exit = mn.net.add_edge(i, t, T, 0);
        else
            mn.net.add_edge(i, t, detail::rival_cap(T, model), mn.B);
    }
    return mn;
}

// Even electorate, alpha = 1.
inline MicroNet build_LT(const Election& e, int64_t T, int p = 0, WinnerModel model = WinnerModel::Nonunique) {
    if (odd_voters(e)) throw std::invalid_argument("L(T) needs an even number of voters");
    int m = e.m();
    MicroNet mn;
    mn.B = big_b(e);
    int s = m, t = m + 1;
    std::vector<std::pair<int, int>> ties;
    std::vector<int> c0i;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (e.vs(i, j) == 0) ties.push_back({i, j});
    for (int i = 0; i < m; ++i)
        if (i != p && e.vs(i, p) > 0) c0i.push_back(i);
    int prime0 = m + 2;
    int N = prime0 + m + static_cast<int>(ties.size() + c0i.size());
    mn.net = FlowNetwork(N, s, t);
    for (int i = 0; i < m; ++i) {
        mn.net.label(i, e.name(i));
        mn.net.label(prime0 + i, e.name(i) + "'");
    }
    mn.net.label(s, "s");
    mn.net.label(t, "t");
    int next = prime0 + m;
    for (int i = 0; i < m; ++i) {
        int64_t sc = 0;
        for (int j = 0; j < m; ++j)
            if (j != i && e.vs(i, j) >= 0) ++sc;
        mn.net.add_edge(s, i, sc, 0);
        mn.F += sc;
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != p && j != p && i != j && e.vs(i, j) > 0) {
                int ed = mn.net.add_edge(i, j, 1, wincost(e, j, i));
                mn.rules.push_back({ed, {j, i, 1}});
            }
    for (auto [i, j] : ties) {
        int node = next++;
        mn.net.label(node, e.name(i) + "_" + e.name(j));
        int ei = mn.net.add_edge(i, node, 1, wincost(e, j, i));
        int ej = mn.net.add_edge(j, node, 1, wincost(e, i, j));
        mn.net.add_edge(node, t, 1, mn.B);
        mn.rules.push_back({ei, {j, i, 1}});
        mn.rules.push_back({ej, {i, j, 1}});
    }
    for (int i : c0i) {
        int node = next++;
        mn.net.label(node, e.name(p) + "_" + e.name(i));
        int ew = mn.net.add_edge(i, node, 1, wincost(e, p, i));
        int et = mn.net.add_edge(prime0 + i, node, 1, tiecost(e, p, i));
        mn.net.add_edge(node, p, 1, 0);
        mn.rules.push_back({et, {p, i, 0}});
        mn.rules.push_back({ew, {p, i, 1}});
    }
    for (int i = 0; i < m; ++i) {
        int64_t cap = (i == p) ? T : detail::rival_cap(T, model);
        mn.net.add_edge(i, prime0 + i, cap, 0);
        if (i == p)
            mn.p_exit = mn.net.add_edge(prime0 + i, t, T, 0);
        else
            mn.net.add_edge(prime0 + i, t, cap, mn.B);
    }
    return mn;
}

// Contest targets encoded by a flow, one per touched contest.
inline std::vector<ContestTarget> decode_flow(const MicroNet& mn, const Flow& f) {
    std::map<std::pair<int, int>, ContestTarget> by_pair;
    for (const auto& r : mn.rules)
        if (f.f[r.edge] > 0) {
            auto key = std::minmax(r.target.a, r.target.b);
            by_pair[{key.first, key.second}] = r.target;
        }
    std::vector<ContestTarget> out;
    for (auto& [k, v] : by_pair) out.push_back(v);
    return out;
}

inline Tally apply_targets(Tally t, const std::vector<ContestTarget>& ts) {
    for (const auto& x : ts) {
        int64_t v = t(x.a, x.b);
        int64_t r = contest_cost(v, x.sign);
        int64_t nv = x.sign > 0 ? v + 2 * r : (x.sign < 0 ? v - 2 * r : 0);
        t.vs[x.a * t.m + x.b] = nv;
        t.vs[x.b * t.m + x.a] = -nv;
    }
    return t;
}

inline int64_t targets_cost(const Election& e, const std::vector<ContestTarget>& ts) {
    int64_t c = 0;
    for (const auto& t : ts) c += contest_cost(e.vs(t.a, t.b), t.sign);
    return c;
}

// Which network family applies, or nullopt when the flow method does not cover the case.
enum class NetKind { I, J, L };
inline std::optional<NetKind> net_kind(const Election& e, const Alpha& a) {
    if (odd_voters(e)) return NetKind::I;
    if (a.is_zero()) return NetKind::J;
    if (a.is_one()) return NetKind::L;
    return std::nullopt;
}

inline MicroNet build_net(NetKind k, const Election& e, int64_t T, int p, WinnerModel model) {
    switch (k) {
        case NetKind::I: return build_IT(e, T, p, model);
        case NetKind::J: return build_JT(e, T, p, model);
        case NetKind::L: return build_LT(e, T, p, model);
    }
    throw std::logic_error("unreachable");
}

// One threshold's outcome: kappa and decoded targets, if the threshold is usable.
struct ThresholdOutcome {
    int64_t T;
    int64_t kappa;
    std::vector<ContestTarget> targets;
};

inline std::optional<ThresholdOutcome> try_threshold(NetKind k, const Election& e, const Alpha& a, int p,
                                                     WinnerModel model, int64_t T) {
    if (model == WinnerModel::Unique && T < 1) return std::nullopt;
    MicroNet mn = build_net(k, e, T, p, model);
    auto f = solve_min_cost(mn.net, mn.F);
    if (!f) return std::nullopt;
    if (f->f[mn.p_exit] < T) return std::nullopt;
    int64_t kappa = flow_cost(mn.net, *f) - mn.B * (mn.F - T);
    auto targets = decode_flow(mn, *f);
    if (targets_cost(e, targets) != kappa) throw std::logic_error("flow decode does not match flow cost");
    // Recount to be sure the decoded change reaches the goal.
    Tally tl = apply_targets(e.tally(), targets);
    auto w = winners(tl, a, model);
    if (!goal_reached(true, model, w, p)) return std::nullopt;
    return ThresholdOutcome{T, kappa, std::move(targets)};
}

// Constructive microbribery by the threshold loop. With budget k the first threshold whose
// kappa fits is used for the witness; `cost` always holds the minimum over all thresholds.
inline MicrobriberyResult constructive_microbribery(const Election& e, const Alpha& a, int p, int64_t k,
                                                    WinnerModel model) {
    MicrobriberyResult res;
    if (p < 0 || p >= e.m()) throw std::out_of_range("unknown candidate id");
    if (goal_reached(true, model, winners(e, a, model), p)) {
        res.cost = 0;
        return res;
    }
    auto kind = net_kind(e, a);
    if (!kind) {
        res.supported = false;
        return res;
    }
    std::optional<ThresholdOutcome> chosen;
    for (int64_t T = 0; T <= e.m() - 1; ++T) {
        auto o = try_threshold(*kind, e, a, p, model, T);
        if (!o) continue;
        if (!res.cost || o->kappa < *res.cost) res.cost = o->kappa;
        if (!chosen && o->kappa <= k) chosen = o;
    }
    if (chosen) res.witness = realize_targets(e, chosen->targets);
    return res;
}

// ---------------------------------------------------------------- destructive

// Greedy cost of turning `count_full` losing contests into wins and `count_tie` more into ties,
// given the vs values of those losing contests (all < 0 from the promoted side's view).
// Wins cost wincost and ties cost wincost - 1 on an even electorate; ties are impossible when odd.
inline int64_t greedy_from_losses(std::vector<int64_t> loss_costs, int count_full, int count_tie, bool odd) {
    if (count_full + count_tie > static_cast<int>(loss_costs.size())) return kInf;
    if (odd && count_tie > 0) return kInf;
    std::sort(loss_costs.begin(), loss_costs.end());
    int64_t c = 0;
    for (int x = 0; x < count_full + count_tie; ++x) c += loss_costs[x];
    return c - count_tie;
}

// promote_E(c, w', w'', t): c wins w' former losses, w'' former ties, ties t former losses,
// all against candidates other than p.
inline int64_t promote_cost(const Tally& t, bool odd, int p, int c, int w1, int w2, int tt) {
    std::vector<int64_t> losses;
    int tied = 0;
    for (int x = 0; x < t.m; ++x) {
        if (x == c || x == p) continue;
        if (t(c, x) < 0) losses.push_back(wincost_vs(t(c, x)));
        if (t(c, x) == 0) ++tied;
    }
    if (w2 > tied) return kInf;
    int64_t g = greedy_from_losses(losses, w1, tt, odd);
    return g >= kInf ? kInf : g + w2;
}

// demote_E(c, l', l'', t): p loses l' former wins, l'' former ties, ties t former wins,
// all against candidates other than c.
inline int64_t demote_cost(const Tally& t, bool odd, int p, int c, int l1, int l2, int tt) {
    std::vector<int64_t> wins;
    int tied = 0;
    for (int x = 0; x < t.m; ++x) {
        if (x == c || x == p) continue;
        if (t(p, x) > 0) wins.push_back(wincost_vs(-t(p, x)));
        if (t(p, x) == 0) ++tied;
    }
    if (l2 > tied) return kInf;
    int64_t g = greedy_from_losses(wins, l1, tt, odd);
    return g >= kInf ? kInf : g + l2;
}

namespace detail {

// Contest targets matching a promote/demote choice (cheapest contests first, ascending id on ties).
inline void pick_targets(const Tally& t, int self, int skip, bool raise_self, int full, int half, int tie_moves,
                         std::vector<ContestTarget>& out) {
    struct Opt {
        int64_t cost;
        int x;
    };
    std::vector<Opt> lose;  // contests currently going against raise direction
    std::vector<int> tied;
    for (int x = 0; x < t.m; ++x) {
        if (x == self || x == skip) continue;
        int64_t v = raise_self ? t(self, x) : -t(self, x);
        if (v < 0) lose.push_back({wincost_vs(v), x});
        if (v == 0) tied.push_back(x);
    }
    std::stable_sort(lose.begin(), lose.end(), [](const Opt& a, const Opt& b) { return a.cost < b.cost; });
    int sgn = raise_self ? 1 : -1;
    // Cheapest full+half contests; the first `full` of them become decisive, the rest ties.
    // Any split of the chosen set works because win - tie costs exactly 1 on each.
    for (int i = 0; i < full + half; ++i) out.push_back({self, lose[i].x, i < full ? sgn : 0});
    for (int i = 0; i < tie_moves; ++i) out.push_back({self, tied[i], sgn});
}

}  // namespace detail

// Minimum-cost destructive microbribery, found by the E1/E2/E3 decomposition.
inline MicrobriberyResult destructive_min(const Election& e, const Alpha& a, int p, WinnerModel model) {
    MicrobriberyResult res;
    if (p < 0 || p >= e.m()) throw std::out_of_range("unknown candidate id");
    if (goal_reached(false, model, winners(e, a, model), p)) {
        res.cost = 0;
        return res;
    }
    const bool odd = odd_voters(e);
    const int m = e.m();
    const int64_t d = a.den, b = a.num;
    std::optional<std::vector<ContestTarget>> best_targets;
    for (int c = 0; c < m; ++c) {
        if (c == p) continue;
        for (int sgn : {1, -1, 0}) {
            if (odd && sgn == 0) continue;
            int64_t base_cost = contest_cost(e.vs(p, c), sgn);
            Tally t = apply_targets(e.tally(), {{p, c, sgn}});
            auto s = scores(t, a);
            int64_t need = s[p] - s[c];  // gain must exceed this (or reach it for unique)
            struct Opt {
                int64_t gain, cost;
                int x, y, z;
            };
            std::vector<Opt> pro, dem;
            for (int w1 = 0; w1 < m; ++w1)
                for (int tt = 0; w1 + tt < m; ++tt)
                    for (int w2 = 0; w2 < m; ++w2) {
                        int64_t cost = promote_cost(t, odd, p, c, w1, w2, tt);
                        if (cost >= kInf) continue;
                        pro.push_back({d * w1 + (d - b) * w2 + b * tt, cost, w1, w2, tt});
                    }
            for (int l1 = 0; l1 < m; ++l1)
                for (int tt = 0; l1 + tt < m; ++tt)
                    for (int l2 = 0; l2 < m; ++l2) {
                        int64_t cost = demote_cost(t, odd, p, c, l1, l2, tt);
                        if (cost >= kInf) continue;
                        dem.push_back({d * l1 + b * l2 + (d - b) * tt, cost, l1, l2, tt});
                    }
            // For each promote option, the cheapest demote option with enough gain.
            std::sort(dem.begin(), dem.end(), [](const Opt& u, const Opt& v) { return u.gain < v.gain; });
            std::vector<size_t> suffix_best(dem.size() + 1, SIZE_MAX);
            for (size_t i = dem.size(); i-- > 0;) {
                size_t nx = suffix_best[i + 1];
                suffix_best[i] = (nx == SIZE_MAX || dem[i].cost <= dem[nx].cost) ? i : nx;
            }
            for (const auto& x : pro) {
                int64_t want = model == WinnerModel::Unique ? need - x.gain : need - x.gain + 1;
                auto it = std::lower_bound(dem.begin(), dem.end(), want,
                                           [](const Opt& u, int64_t v) { return u.gain < v; });
                size_t idx = suffix_best[static_cast<size_t>(it - dem.begin())];
                if (idx == SIZE_MAX) continue;
                const Opt& y = dem[idx];
                int64_t total = base_cost + x.cost + y.cost;
                if (res.cost && total >= *res.cost) continue;
                res.cost = total;
                std::vector<ContestTarget> ts;
                if (base_cost > 0) ts.push_back({p, c, sgn});
                detail::pick_targets(t, c, p, true, x.x, x.z, x.y, ts);
                detail::pick_targets(t, p, c, false, y.x, y.z, y.y, ts);
                best_targets = ts;
            }
        }
    }
    if (best_targets) res.witness = realize_targets(e, *best_targets);
    return res;
}

inline MicrobriberyResult destructive_microbribery(const Election& e, const Alpha& a, int p, int64_t k,
                                                   WinnerModel model) {
    auto r = destructive_min(e, a, p, model);
    if (!r.cost || *r.cost > k) r.witness.clear();
    return r;
}

inline MicrobriberyResult microbribery(Goal g, const Election& e, const Alpha& a, int p, int64_t k,
                                       WinnerModel model) {
    return g == Goal::Constructive ? constructive_microbribery(e, a, p, k, model)
                                   : destructive_microbribery(e, a, p, k, model);
}

inline bool microbribery_yes(const MicrobriberyResult& r, int64_t k) { return r.supported && r.cost && *r.cost <= k; }

}  // namespace copeland
