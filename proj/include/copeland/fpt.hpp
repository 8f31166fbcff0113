#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/control.hpp"
#include "copeland/oracle.hpp"
#include "copeland/two_stage.hpp"

namespace copeland {

// ---------------------------------------------------------------- outcome tables

inline int64_t cot_count(int j) {
    int64_t c = 1;
    for (int x = 0; x < j * (j - 1) / 2; ++x) c *= 3;
    return c;
}

// The idx-th table over j candidates: pairs (0,1), (0,2), ..., (j-2,j-1), the first pair the
// most significant base-3 digit; digit 0 = tie, 1 = lower id wins, 2 = higher id wins.
inline Cot cot_at(int j, int64_t idx) {
    Cot c(j);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < j; ++a)
        for (int b = a + 1; b < j; ++b) pairs.push_back({a, b});
    for (size_t q = pairs.size(); q-- > 0;) {
        int d = static_cast<int>(idx % 3);
        idx /= 3;
        c.set(pairs[q].first, pairs[q].second, d == 0 ? 0 : (d == 1 ? 1 : -1));
    }
    return c;
}

inline std::vector<Cot> enumerate_cots(int j) {
    if (j < 0 || j > 5) throw std::invalid_argument("outcome table enumeration supports at most 5 candidates");
    std::vector<Cot> out;
    int64_t n = cot_count(j);
    out.reserve(n);
    for (int64_t i = 0; i < n; ++i) out.push_back(cot_at(j, i));
    return out;
}

// ---------------------------------------------------------------- integer feasibility

struct LinearConstraint {
    enum class Rel { LE, GE, EQ };
    std::vector<int64_t> coef;
    Rel rel;
    int64_t rhs;
};

struct IntProblem {
    std::vector<int64_t> lo, hi;  // finite bounds per variable
    std::vector<LinearConstraint> cons;

    int add_var(int64_t l, int64_t h) {
        lo.push_back(l);
        hi.push_back(h);
        for (auto& c : cons) c.coef.push_back(0);
        return static_cast<int>(lo.size()) - 1;
    }
    void add(std::vector<int64_t> coef, LinearConstraint::Rel rel, int64_t rhs) {
        coef.resize(lo.size(), 0);
        cons.push_back({std::move(coef), rel, rhs});
    }
};

namespace detail {

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
inline int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

// Tighten bounds from sum coef*x <= rhs. Returns false on a wipe-out.
inline bool propagate_le(const std::vector<int64_t>& coef, int64_t rhs, std::vector<int64_t>& lo,
                         std::vector<int64_t>& hi, bool& changed) {
    int64_t minsum = 0;
    for (size_t i = 0; i < coef.size(); ++i) minsum += coef[i] > 0 ? coef[i] * lo[i] : coef[i] * hi[i];
    if (minsum > rhs) return false;
    for (size_t i = 0; i < coef.size(); ++i) {
        int64_t c = coef[i];
        if (c == 0) continue;
        int64_t own = c > 0 ? c * lo[i] : c * hi[i];
        int64_t slack = rhs - (minsum - own);  // c * x_i <= slack
        if (c > 0) {
            int64_t nh = floor_div(slack, c);
            if (nh < hi[i]) {
                hi[i] = nh;
                changed = true;
            }
        } else {
            int64_t nl = ceil_div(slack, c);
            if (nl > lo[i]) {
                lo[i] = nl;
                changed = true;
            }
        }
        if (lo[i] > hi[i]) return false;
    }
    return true;
}

inline bool propagate(const IntProblem& P, std::vector<int64_t>& lo, std::vector<int64_t>& hi) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : P.cons) {
            if (c.rel != LinearConstraint::Rel::GE && !propagate_le(c.coef, c.rhs, lo, hi, changed)) return false;
            if (c.rel != LinearConstraint::Rel::LE) {
                std::vector<int64_t> neg(c.coef.size());
                for (size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coef[i];
                if (!propagate_le(neg, -c.rhs, lo, hi, changed)) return false;
            }
        }
    }
    return true;
}

}  // namespace detail

inline bool satisfies(const IntProblem& P, const std::vector<int64_t>& x) {
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] < P.lo[i] || x[i] > P.hi[i]) return false;
    for (const auto& c : P.cons) {
        int64_t s = 0;
        for (size_t i = 0; i < x.size(); ++i) s += c.coef[i] * x[i];
        if (c.rel == LinearConstraint::Rel::LE && s > c.rhs) return false;
        if (c.rel == LinearConstraint::Rel::GE && s < c.rhs) return false;
        if (c.rel == LinearConstraint::Rel::EQ && s != c.rhs) return false;
    }
    return true;
}

// Depth-first branch and bound: propagate bounds, then split the smallest open domain in half.
inline std::optional<std::vector<int64_t>> ilp_feasible(const IntProblem& P, int64_t* nodes = nullptr) {
    if (P.lo.size() > 64) throw std::invalid_argument("integer feasibility supports at most 64 variables");
    for (size_t i = 0; i < P.lo.size(); ++i)
        if (P.lo[i] > P.hi[i]) return std::nullopt;
    std::function<std::optional<std::vector<int64_t>>(std::vector<int64_t>, std::vector<int64_t>)> rec =
        [&](std::vector<int64_t> lo, std::vector<int64_t> hi) -> std::optional<std::vector<int64_t>> {
        if (nodes) ++*nodes;
        if (!detail::propagate(P, lo, hi)) return std::nullopt;
        int pick = -1;
        for (size_t i = 0; i < lo.size(); ++i)
            if (lo[i] < hi[i] && (pick < 0 || hi[i] - lo[i] < hi[pick] - lo[pick])) pick = static_cast<int>(i);
        if (pick < 0) return satisfies(P, lo) ? std::optional(lo) : std::nullopt;
        int64_t mid = lo[pick] + (hi[pick] - lo[pick]) / 2;
        auto h2 = hi;
        h2[pick] = mid;
        if (auto r = rec(lo, h2)) return r;
        auto l2 = lo;
        l2[pick] = mid + 1;
        return rec(l2, hi);
    };
    return rec(P.lo, P.hi);
}

// ---------------------------------------------------------------- vote types

// Distinct pairwise-preference patterns among voter blocks, with total counts.
struct VoteTypes {
    std::vector<Preference> type;       // representative preference of each type
    std::vector<int64_t> count;         // n_a
    std::vector<int> block_type;        // block -> type index
};

inline std::vector<uint8_t> pattern(const Preference& p, int m) {
    std::vector<uint8_t> k;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) k.push_back(p.prefers(i, j) ? 1 : 0);
    return k;
}

inline VoteTypes vote_types(const std::vector<VoterBlock>& blocks, int m) {
    VoteTypes vt;
    std::map<std::vector<uint8_t>, int> idx;
    for (const auto& b : blocks) {
        auto key = pattern(b.pref, m);
        auto it = idx.find(key);
        int t;
        if (it == idx.end()) {
            t = static_cast<int>(vt.type.size());
            idx.emplace(key, t);
            vt.type.push_back(b.pref);
            vt.count.push_back(0);
        } else {
            t = it->second;
        }
        vt.count[t] += b.mult;
        vt.block_type.push_back(t);
    }
    return vt;
}

// Spread per-type counts back over the blocks of each type, in block order.
inline std::vector<int64_t> spread(const VoteTypes& vt, const std::vector<VoterBlock>& blocks,
                                   const std::vector<int64_t>& per_type) {
    std::vector<int64_t> left = per_type, out(blocks.size(), 0);
    for (size_t b = 0; b < blocks.size(); ++b) {
        int t = vt.block_type[b];
        out[b] = std::min(left[t], blocks[b].mult);
        left[t] -= out[b];
    }
    return out;
}

namespace detail {

// Per pair (i<l): +1 if the type prefers i, -1 otherwise.
inline int64_t type_sign(const Preference& p, int i, int l) { return p.prefers(i, l) ? 1 : -1; }

// sum_a coef_a * x_a + base REL target sign, for the pair (i,l) outcome sgn.
inline void add_outcome(IntProblem& P, std::vector<int64_t> coef, int64_t base, int sgn) {
    using R = LinearConstraint::Rel;
    if (sgn > 0)
        P.add(std::move(coef), R::GE, 1 - base);
    else if (sgn < 0)
        P.add(std::move(coef), R::LE, -1 - base);
    else
        P.add(std::move(coef), R::EQ, -base);
}

}  // namespace detail

// ---------------------------------------------------------------- goals

// What the final election looks like: its candidates (ascending ids) and their scaled scores there.
struct FinalView {
    std::vector<int> candidates;
    std::vector<int64_t> scores;

    std::vector<int> winners() const {
        std::vector<int> w;
        if (candidates.empty()) return w;
        int64_t best = *std::max_element(scores.begin(), scores.end());
        for (size_t i = 0; i < candidates.size(); ++i)
            if (scores[i] == best) w.push_back(candidates[i]);
        return w;
    }
};

struct CotGoal {
    std::string name;
    std::function<bool(const FinalView&)> test;
};

inline FinalView final_view(const Tally& t, const Alpha& a, const std::vector<int>& fin) {
    return {fin, scores_within(t, a, fin)};
}

namespace goals {

inline CotGoal p_wins(int p, bool constructive, WinnerModel model) {
    return {constructive ? "p-wins" : "p-not-wins",
            [=](const FinalView& v) { return goal_reached(constructive, model, v.winners(), p); }};
}

// Scores strictly decrease along the lexicographic order of candidate names.
inline CotGoal lexicographic_order(std::vector<std::string> names) {
    return {"lex-order", [names = std::move(names)](const FinalView& v) {
                std::vector<size_t> ord(v.candidates.size());
                for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
                std::sort(ord.begin(), ord.end(),
                          [&](size_t x, size_t y) { return names[v.candidates[x]] < names[v.candidates[y]]; });
                for (size_t i = 1; i < ord.size(); ++i)
                    if (!(v.scores[ord[i - 1]] > v.scores[ord[i]])) return false;
                return true;
            }};
}

// levels[c] = rank level of candidate c (0 = top); equal levels must tie, lower levels must score more.
inline CotGoal weak_order(std::vector<int> levels) {
    return {"weak-order", [levels = std::move(levels)](const FinalView& v) {
                for (size_t x = 0; x < v.candidates.size(); ++x)
                    for (size_t y = 0; y < v.candidates.size(); ++y) {
                        int lx = levels.at(v.candidates[x]), ly = levels.at(v.candidates[y]);
                        if (lx == ly && v.scores[x] != v.scores[y]) return false;
                        if (lx < ly && v.scores[x] <= v.scores[y]) return false;
                    }
                return true;
            }};
}

inline CotGoal exactly_cowinners(size_t q) {
    return {"cowinners=" + std::to_string(q), [q](const FinalView& v) { return v.winners().size() == q; }};
}

inline CotGoal all_distinct() {
    return {"all-distinct", [](const FinalView& v) {
                auto s = v.scores;
                std::sort(s.begin(), s.end());
                return std::adjacent_find(s.begin(), s.end()) == s.end();
            }};
}

}  // namespace goals

struct FptOptions {
    int candidate_bound = 8;
    int voter_bound = 20;
};

// ---------------------------------------------------------------- partition of voters

// Partition of voters via pairs of outcome tables plus integer feasibility.
inline Verdict fpt_pv_goal(TieRule rule, const ControlInstance& in, const CotGoal& goal) {
    const Election& e = in.election;
    const int j = e.m();
    if (j > 4) throw std::invalid_argument("partition of voters by outcome tables supports at most 4 candidates");
    const Alpha& a = in.alpha;
    const Tally& whole = e.tally();
    VoteTypes vt = vote_types(e.voters(), j);
    const size_t nt = vt.type.size();
    auto cots = enumerate_cots(j);
    auto all = all_candidates(j);
    std::vector<std::vector<int>> surv(cots.size());
    for (size_t i = 0; i < cots.size(); ++i) surv[i] = survivors(cots[i].as_tally(), a, all, rule);

    // Constraints making part one (x) or part two (n - x) match a table.
    auto add_table = [&](IntProblem& P, const Cot& c, bool second) {
        for (int i = 0; i < j; ++i)
            for (int l = i + 1; l < j; ++l) {
                std::vector<int64_t> coef(nt);
                int64_t base = 0;
                for (size_t t = 0; t < nt; ++t) {
                    int64_t s = detail::type_sign(vt.type[t], i, l);
                    coef[t] = second ? -s : s;
                    if (second) base += s * vt.count[t];
                }
                detail::add_outcome(P, coef, base, c.sign(i, l));
            }
    };
    auto fresh = [&]() {
        IntProblem P;
        for (size_t t = 0; t < nt; ++t) P.add_var(0, vt.count[t]);
        return P;
    };
    // Tables realizable by some part at all (same test for both parts by symmetry).
    std::vector<int8_t> alone(cots.size(), -1);
    auto realizable = [&](size_t i) {
        if (alone[i] < 0) {
            IntProblem P = fresh();
            add_table(P, cots[i], false);
            alone[i] = ilp_feasible(P) ? 1 : 0;
        }
        return alone[i] == 1;
    };
    Verdict v;
    for (size_t i1 = 0; i1 < cots.size(); ++i1)
        for (size_t i2 = 0; i2 < cots.size(); ++i2) {
            ++v.nodes;
            auto fin = sorted_union(surv[i1], surv[i2]);
            if (!goal.test(final_view(whole, a, fin))) continue;
            if (!realizable(i1) || !realizable(i2)) continue;
            IntProblem P = fresh();
            add_table(P, cots[i1], false);
            add_table(P, cots[i2], true);
            if (auto x = ilp_feasible(P)) {
                v.decision = Decision::Yes;
                v.witness = ControlAction{ControlAction::Kind::PartitionVoters, {}, spread(vt, e.voters(), *x)};
                return v;
            }
        }
    return v;
}

inline Verdict fpt_pv(TieRule rule, bool constructive, const ControlInstance& in) {
    return fpt_pv_goal(rule, in, goals::p_wins(in.target, constructive, in.model));
}

// ---------------------------------------------------------------- adding / deleting voters

inline Verdict fpt_av_dv_goal(Action act, const ControlInstance& in, const CotGoal& goal) {
    if (act != Action::AV && act != Action::DV) throw std::invalid_argument("expected AV or DV");
    const Election& e = in.election;
    const int j = e.m();
    if (j > 5) throw std::invalid_argument("adding/deleting voters by outcome tables supports at most 5 candidates");
    const Alpha& a = in.alpha;
    const bool add = act == Action::AV;
    VoteTypes reg = vote_types(e.voters(), j);
    VoteTypes pool = vote_types(in.pool, j);
    const VoteTypes& var = add ? pool : reg;
    const size_t nt = var.type.size();
    auto all = all_candidates(j);
    Verdict v;
    for (int64_t idx = 0; idx < cot_count(j); ++idx) {
        ++v.nodes;
        Cot c = cot_at(j, idx);
        if (!goal.test(final_view(c.as_tally(), a, all))) continue;
        IntProblem P;
        for (size_t t = 0; t < nt; ++t) P.add_var(0, var.count[t]);
        P.add(std::vector<int64_t>(nt, 1), LinearConstraint::Rel::LE, in.budget);
        for (int i = 0; i < j; ++i)
            for (int l = i + 1; l < j; ++l) {
                int64_t base = e.vs(i, l);
                std::vector<int64_t> coef(nt);
                for (size_t t = 0; t < nt; ++t) {
                    int64_t s = detail::type_sign(var.type[t], i, l);
                    coef[t] = add ? s : -s;
                }
                detail::add_outcome(P, coef, base, c.sign(i, l));
            }
        if (auto x = ilp_feasible(P)) {
            v.decision = Decision::Yes;
            auto kind = add ? ControlAction::Kind::AddVoters : ControlAction::Kind::DeleteVoters;
            v.witness = ControlAction{kind, {}, spread(var, add ? in.pool : e.voters(), *x)};
            return v;
        }
    }
    return v;
}

inline Verdict fpt_av_dv(const ControlTag& tag, const ControlInstance& in) {
    return fpt_av_dv_goal(tag.action, in, goals::p_wins(in.target, tag.constructive, in.model));
}

// ---------------------------------------------------------------- brute force

// Candidate control with few candidates: try every action, evaluating on aggregate counts.
inline Verdict fpt_candidate_control(const ControlTag& tag, const ControlInstance& in, const FptOptions& opt = {}) {
    if (!is_candidate_action(tag.action)) throw std::invalid_argument("expected a candidate-control tag");
    if (in.election.m() > opt.candidate_bound) throw std::invalid_argument("too many candidates for brute force");
    OracleOptions o;
    o.cap = int64_t{1} << (opt.candidate_bound + 1);
    return control_oracle(tag, in, o);
}

namespace detail {

inline std::vector<int64_t> mask_counts(const std::vector<VoterBlock>& blocks, uint32_t mask) {
    std::vector<int64_t> c(blocks.size(), 0);
    int bit = 0;
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int64_t u = 0; u < blocks[b].mult; ++u, ++bit)
            if ((mask >> bit) & 1) ++c[b];
    return c;
}

}  // namespace detail

// Voter control with few voters: every subset of unit voters (pool voters for AV).
inline Verdict fpt_voter_control_bv(const ControlTag& tag, const ControlInstance& in, const FptOptions& opt = {}) {
    if (is_candidate_action(tag.action)) throw std::invalid_argument("expected a voter-control tag");
    const auto& blocks = tag.action == Action::AV ? in.pool : in.election.voters();
    int64_t units = 0;
    for (const auto& b : blocks) units += b.mult;
    if (units > opt.voter_bound) throw std::invalid_argument("too many voters for brute force");
    using K = ControlAction::Kind;
    K kind = tag.action == Action::AV ? K::AddVoters : tag.action == Action::DV ? K::DeleteVoters : K::PartitionVoters;
    bool budgeted = tag.action == Action::AV || tag.action == Action::DV;
    Verdict v;
    for (uint32_t mask = 0; mask < (uint32_t{1} << units); ++mask) {
        if (budgeted && std::popcount(mask) > in.budget) continue;
        ++v.nodes;
        ControlAction act{kind, {}, detail::mask_counts(blocks, mask)};
        auto r = replay(tag, in, act);
        if (r.valid && r.success) {
            v.decision = Decision::Yes;
            v.witness = act;
            return v;
        }
    }
    return v;
}

// ---------------------------------------------------------------- extended control

// Any goal over the final election, for the tags with an outcome-table algorithm (AV, DV,
// PV-TE, PV-TP) and, by brute force, for candidate control.
inline Verdict extended_control(const CotGoal& goal, const ControlTag& tag, const ControlInstance& in,
                                const FptOptions& opt = {}) {
    switch (tag.action) {
        case Action::AV:
        case Action::DV: return fpt_av_dv_goal(tag.action, in, goal);
        case Action::PV_TE:
        case Action::PV_TP: return fpt_pv_goal(rule_of(tag.action), in, goal);
        default: break;
    }
    if (in.election.m() > opt.candidate_bound) throw std::invalid_argument("too many candidates for brute force");
    const Tally& t = in.election.tally();
    const Alpha& a = in.alpha;
    auto sp = action_space(tag, in);
    std::atomic<int64_t> nodes{0};
    auto final_set = [&](const ControlAction& act) {
        std::vector<int> fin;
        switch (tag.action) {
            case Action::AC:
            case Action::ACu:
                fin = sorted_union(in.registered(), act.candidates);
                break;
            case Action::DC:
                for (int c = 0; c < t.m; ++c)
                    if (std::find(act.candidates.begin(), act.candidates.end(), c) == act.candidates.end()) fin.push_back(c);
                break;
            default: {
                std::vector<int> c1 = act.candidates, c2;
                for (int c = 0; c < t.m; ++c)
                    if (std::find(c1.begin(), c1.end(), c) == c1.end()) c2.push_back(c);
                auto rule = rule_of(tag.action);
                fin = survivors(t, a, c1, rule);
                bool pc = tag.action == Action::PC_TE || tag.action == Action::PC_TP;
                fin = sorted_union(fin, pc ? c2 : survivors(t, a, c2, rule));
            }
        }
        return fin;
    };
    auto found = detail::search_vectors(sp.ub, sp.budget, 1, [&](const std::vector<int64_t>& x) {
        return goal.test(final_view(t, a, final_set(action_from_vector(tag, sp, x))));
    }, nodes);
    Verdict v;
    v.nodes = nodes.load();
    if (found) {
        v.decision = Decision::Yes;
        v.witness = action_from_vector(tag, sp, *found);
    }
    return v;
}

}  // namespace copeland
