#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/election.hpp"
#include "copeland/two_stage.hpp"

namespace copeland {

enum class Action { AC, ACu, DC, PC_TE, PC_TP, RPC_TE, RPC_TP, AV, DV, PV_TE, PV_TP };

struct ControlTag {
    bool constructive = true;
    Action action = Action::AC;
    bool condorcet = false;  // Condorcet winner semantics (CCDV and CCPV only)

    friend bool operator==(const ControlTag&, const ControlTag&) = default;
};

inline const char* action_name(Action a) {
    switch (a) {
        case Action::AC: return "AC";
        case Action::ACu: return "ACu";
        case Action::DC: return "DC";
        case Action::PC_TE: return "PC-TE";
        case Action::PC_TP: return "PC-TP";
        case Action::RPC_TE: return "RPC-TE";
        case Action::RPC_TP: return "RPC-TP";
        case Action::AV: return "AV";
        case Action::DV: return "DV";
        case Action::PV_TE: return "PV-TE";
        case Action::PV_TP: return "PV-TP";
    }
    return "?";
}

inline std::vector<Action> all_actions() {
    return {Action::AC,     Action::ACu,    Action::DC, Action::PC_TE, Action::PC_TP, Action::RPC_TE,
            Action::RPC_TP, Action::AV,     Action::DV, Action::PV_TE, Action::PV_TP};
}

inline std::string tag_name(const ControlTag& t) {
    std::string s = std::string(t.constructive ? "CC" : "DC") + action_name(t.action);
    return t.condorcet ? "CONDORCET-" + s : s;
}

inline ControlTag parse_tag(std::string s) {
    ControlTag t;
    const std::string pre = "CONDORCET-";
    if (s.rfind(pre, 0) == 0) {
        t.condorcet = true;
        s = s.substr(pre.size());
    }
    if (s.size() < 3) throw std::invalid_argument("unknown control tag: " + s);
    if (s.rfind("CC", 0) == 0)
        t.constructive = true;
    else if (s.rfind("DC", 0) == 0)
        t.constructive = false;
    else
        throw std::invalid_argument("unknown control tag: " + s);
    std::string rest = s.substr(2);
    for (Action a : all_actions())
        if (rest == action_name(a)) {
            t.action = a;
            if (t.condorcet && !(t.constructive && (a == Action::DV || a == Action::PV_TE || a == Action::PV_TP)))
                throw std::invalid_argument("Condorcet semantics only for CCDV and CCPV");
            if (t.condorcet && a == Action::PV_TE) t.action = Action::PV_TP;
            return t;
        }
    if (t.condorcet && rest == "PV") {
        t.action = Action::PV_TP;
        return t;
    }
    throw std::invalid_argument("unknown control tag: " + s);
}

inline bool is_candidate_action(Action a) { return a != Action::AV && a != Action::DV && a != Action::PV_TE && a != Action::PV_TP; }
inline bool is_partition(Action a) {
    return a == Action::PC_TE || a == Action::PC_TP || a == Action::RPC_TE || a == Action::RPC_TP ||
           a == Action::PV_TE || a == Action::PV_TP;
}
inline TieRule rule_of(Action a) {
    return (a == Action::PC_TE || a == Action::RPC_TE || a == Action::PV_TE) ? TieRule::TE : TieRule::TP;
}

// Inputs of one control question. For AC/ACu the election ranges over C and the spoilers;
// `spoilers` lists the spoiler ids. For AV the unregistered voters live in `pool`.
struct ControlInstance {
    Election election;
    int target = 0;
    std::vector<int> spoilers;
    std::vector<VoterBlock> pool;
    int64_t budget = 0;
    Alpha alpha = Alpha::half();
    WinnerModel model = WinnerModel::Nonunique;

    std::vector<int> registered() const {
        std::vector<char> sp(election.m(), 0);
        for (int d : spoilers) sp.at(d) = 1;
        std::vector<int> c;
        for (int i = 0; i < election.m(); ++i)
            if (!sp[i]) c.push_back(i);
        return c;
    }
    int64_t pool_size() const {
        int64_t s = 0;
        for (const auto& b : pool) s += b.mult;
        return s;
    }
};

struct ControlAction {
    enum class Kind { None, AddCandidates, DeleteCandidates, PartitionCandidates, AddVoters, DeleteVoters, PartitionVoters };
    Kind kind = Kind::None;
    std::vector<int> candidates;  // added / deleted / first part
    std::vector<int64_t> counts;  // per block: added (pool), deleted, or placed in the first part

    friend bool operator==(const ControlAction&, const ControlAction&) = default;
};

enum class Decision { Yes, No, CapExceeded, Unsupported };

inline const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Yes: return "YES";
        case Decision::No: return "NO";
        case Decision::CapExceeded: return "CAP_EXCEEDED";
        case Decision::Unsupported: return "UNSUPPORTED";
    }
    return "?";
}

struct Verdict {
    Decision decision = Decision::No;
    std::optional<ControlAction> witness;
    int64_t nodes = 0;
    std::string note;
};

struct ReplayResult {
    bool valid = false;
    bool success = false;
    std::vector<int> winners;  // Copeland winners (nonunique set), or the Condorcet winner
    std::string error;
};

namespace detail {

inline bool p_in(const std::vector<int>& w, int p) { return std::find(w.begin(), w.end(), p) != w.end(); }

inline Tally pool_tally(int m, const std::vector<VoterBlock>& pool, const std::vector<int64_t>& counts) {
    std::vector<VoterBlock> add;
    for (size_t i = 0; i < pool.size(); ++i)
        if (counts[i] > 0) add.push_back({pool[i].pref, counts[i]});
    Tally t(m);
    t.add_blocks(add);
    return t;
}

inline Tally sum(const Tally& a, const Tally& b, int sign) {
    Tally t(a.m);
    for (size_t k = 0; k < t.vs.size(); ++k) t.vs[k] = a.vs[k] + sign * b.vs[k];
    return t;
}

}  // namespace detail

// Evaluate an action on an instance from first principles.
inline ReplayResult replay(const ControlTag& tag, const ControlInstance& in, const ControlAction& act) {
    ReplayResult r;
    const Election& e = in.election;
    const int m = e.m();
    const int p = in.target;
    auto fail = [&](const std::string& msg) {
        r.valid = false;
        r.error = msg;
        return r;
    };
    auto finish = [&](std::vector<int> w) {
        r.valid = true;
        r.winners = w;
        if (tag.condorcet)
            r.success = (w.size() == 1 && w[0] == p);
        else
            r.success = goal_reached(tag.constructive, in.model, w, p);
        return r;
    };
    const Tally& T = e.tally();
    std::vector<int> C = in.registered();
    switch (tag.action) {
        case Action::AC:
        case Action::ACu: {
            if (act.kind != ControlAction::Kind::AddCandidates) return fail("expected an add-candidates action");
            std::vector<char> isd(m, 0);
            for (int d : in.spoilers) isd[d] = 1;
            std::vector<int> sub = C;
            std::vector<char> seen(m, 0);
            for (int d : act.candidates) {
                if (d < 0 || d >= m || !isd[d] || seen[d]++) return fail("added candidate is not a spoiler");
                sub.push_back(d);
            }
            if (tag.action == Action::AC && static_cast<int64_t>(act.candidates.size()) > in.budget)
                return fail("budget exceeded");
            std::sort(sub.begin(), sub.end());
            return finish(winners_within(T, in.alpha, sub));
        }
        case Action::DC: {
            if (act.kind != ControlAction::Kind::DeleteCandidates) return fail("expected a delete-candidates action");
            std::vector<char> del(m, 0);
            for (int d : act.candidates) {
                if (d < 0 || d >= m || del[d]++) return fail("bad deleted candidate");
                if (d == p) return fail("the target may not be deleted");
            }
            if (static_cast<int64_t>(act.candidates.size()) > in.budget) return fail("budget exceeded");
            std::vector<int> sub;
            for (int c = 0; c < m; ++c)
                if (!del[c]) sub.push_back(c);
            return finish(winners_within(T, in.alpha, sub));
        }
        case Action::PC_TE:
        case Action::PC_TP:
        case Action::RPC_TE:
        case Action::RPC_TP: {
            if (act.kind != ControlAction::Kind::PartitionCandidates) return fail("expected a candidate partition");
            std::vector<char> in1(m, 0);
            for (int c : act.candidates) {
                if (c < 0 || c >= m || in1[c]++) return fail("bad partition");
            }
            std::vector<int> c1, c2;
            for (int c = 0; c < m; ++c) (in1[c] ? c1 : c2).push_back(c);
            StageKind k = (tag.action == Action::PC_TE || tag.action == Action::PC_TP) ? StageKind::PC : StageKind::RPC;
            return finish(two_stage_candidates(T, in.alpha, rule_of(tag.action), k, c1, c2));
        }
        case Action::AV: {
            if (act.kind != ControlAction::Kind::AddVoters || act.counts.size() != in.pool.size())
                return fail("expected an add-voters action");
            int64_t tot = 0;
            for (size_t i = 0; i < act.counts.size(); ++i) {
                if (act.counts[i] < 0 || act.counts[i] > in.pool[i].mult) return fail("bad added voter count");
                tot += act.counts[i];
            }
            if (tot > in.budget) return fail("budget exceeded");
            Tally t = detail::sum(T, detail::pool_tally(m, in.pool, act.counts), 1);
            if (tag.condorcet) {
                auto c = condorcet_winner(t);
                return finish(c ? std::vector<int>{*c} : std::vector<int>{});
            }
            return finish(winners(t, in.alpha));
        }
        case Action::DV: {
            if (act.kind != ControlAction::Kind::DeleteVoters || act.counts.size() != e.voters().size())
                return fail("expected a delete-voters action");
            int64_t tot = 0;
            for (size_t i = 0; i < act.counts.size(); ++i) {
                if (act.counts[i] < 0 || act.counts[i] > e.voters()[i].mult) return fail("bad deleted voter count");
                tot += act.counts[i];
            }
            if (tot > in.budget) return fail("budget exceeded");
            Tally t = detail::sum(T, first_part_tally(e, act.counts), -1);
            if (tag.condorcet) {
                auto c = condorcet_winner(t);
                return finish(c ? std::vector<int>{*c} : std::vector<int>{});
            }
            return finish(winners(t, in.alpha));
        }
        case Action::PV_TE:
        case Action::PV_TP: {
            if (act.kind != ControlAction::Kind::PartitionVoters || act.counts.size() != e.voters().size())
                return fail("expected a voter partition");
            for (size_t i = 0; i < act.counts.size(); ++i)
                if (act.counts[i] < 0 || act.counts[i] > e.voters()[i].mult) return fail("bad partition count");
            Tally t1 = first_part_tally(e, act.counts);
            Tally t2 = complement_tally(T, t1);
            if (tag.condorcet) {
                auto c = condorcet_pv_from_tallies(T, t1, t2);
                if (!c.admissible) return fail("a subelection has no Condorcet winner");
                return finish(c.winner ? std::vector<int>{*c.winner} : std::vector<int>{});
            }
            return finish(two_stage_voters_tallies(T, t1, t2, in.alpha, rule_of(tag.action)));
        }
    }
    return fail("unknown action");
}

// ---------------------------------------------------------------- polynomial algorithms

namespace detail {

// Scaled score of x in the two-candidate election {x, y}.
inline int64_t pair_score(const Tally& t, const Alpha& a, int x, int y) { return contest_points(t(x, y), a); }

inline int64_t score_in(const Tally& t, const Alpha& a, const std::vector<int>& sub, int c) {
    int64_t s = 0;
    for (int x : sub)
        if (x != c) s += contest_points(t(c, x), a);
    return s;
}

inline bool goal_ok(int64_t diff, WinnerModel model) { return model == WinnerModel::Unique ? diff >= 0 : diff > 0; }

}  // namespace detail

// Destructive control by adding (at most k) spoilers: maximize score(c) - score(p) for each rival.
inline Verdict dcac_greedy(const ControlInstance& in, int64_t k) {
    Verdict v;
    const Tally& t = in.election.tally();
    const Alpha& a = in.alpha;
    const int p = in.target;
    std::vector<int> C = in.registered();
    std::vector<char> isd(in.election.m(), 0);
    for (int d : in.spoilers) isd[d] = 1;
    if (isd.at(p)) throw std::invalid_argument("target must be a registered candidate");
    // k = 0 or nothing to add: plain winner test.
    {
        auto w = winners_within(t, a, C);
        if (goal_reached(false, in.model, w, p)) {
            v.decision = Decision::Yes;
            v.witness = ControlAction{ControlAction::Kind::AddCandidates, {}, {}};
            return v;
        }
    }
    if (k <= 0) return v;
    std::vector<int> rivals;
    for (int c = 0; c < in.election.m(); ++c)
        if (c != p) rivals.push_back(c);
    for (int c : rivals) {
        std::vector<int> Dp;
        std::vector<int> base = C;
        if (isd[c]) {
            Dp.push_back(c);
            base.push_back(c);
        }
        int64_t diff = detail::score_in(t, a, base, c) - detail::score_in(t, a, base, p);
        struct G {
            int64_t gain;
            int d;
        };
        std::vector<G> gains;
        for (int d : in.spoilers) {
            if (d == c) continue;
            int64_t g = detail::pair_score(t, a, c, d) - detail::pair_score(t, a, p, d);
            if (g > 0) gains.push_back({g, d});
        }
        std::stable_sort(gains.begin(), gains.end(), [](const G& x, const G& y) { return x.gain > y.gain; });
        for (const auto& g : gains) {
            if (static_cast<int64_t>(Dp.size()) >= k) break;
            Dp.push_back(g.d);
            diff += g.gain;
        }
        ++v.nodes;
        if (detail::goal_ok(diff, in.model)) {
            std::sort(Dp.begin(), Dp.end());
            v.decision = Decision::Yes;
            v.witness = ControlAction{ControlAction::Kind::AddCandidates, Dp, {}};
            return v;
        }
    }
    return v;
}

// Destructive control by deleting at most k candidates other than p.
inline Verdict dcdc_greedy(const Tally& t, const Alpha& a, int p, int64_t k, WinnerModel model) {
    Verdict v;
    auto all = all_candidates(t.m);
    if (goal_reached(false, model, winners_within(t, a, all), p)) {
        v.decision = Decision::Yes;
        v.witness = ControlAction{ControlAction::Kind::DeleteCandidates, {}, {}};
        return v;
    }
    if (k <= 0) return v;
    for (int c = 0; c < t.m; ++c) {
        if (c == p) continue;
        int64_t diff = detail::score_in(t, a, all, c) - detail::score_in(t, a, all, p);
        struct G {
            int64_t gain;
            int d;
        };
        std::vector<G> gains;
        for (int d = 0; d < t.m; ++d) {
            if (d == p || d == c) continue;
            int64_t g = detail::pair_score(t, a, p, d) - detail::pair_score(t, a, c, d);
            if (g > 0) gains.push_back({g, d});
        }
        std::stable_sort(gains.begin(), gains.end(), [](const G& x, const G& y) { return x.gain > y.gain; });
        std::vector<int> del;
        for (const auto& g : gains) {
            if (static_cast<int64_t>(del.size()) >= k) break;
            del.push_back(g.d);
            diff += g.gain;
        }
        ++v.nodes;
        if (detail::goal_ok(diff, model)) {
            std::sort(del.begin(), del.end());
            v.decision = Decision::Yes;
            v.witness = ControlAction{ControlAction::Kind::DeleteCandidates, del, {}};
            return v;
        }
    }
    return v;
}

inline Verdict dcdc_greedy(const ControlInstance& in, int64_t k) {
    return dcdc_greedy(in.election.tally(), in.alpha, in.target, k, in.model);
}

// Destructive partition of candidates (PC or RPC, TE or TP).
inline Verdict dc_partition(const ControlInstance& in, Action kind) {
    const Tally& t = in.election.tally();
    const Alpha& a = in.alpha;
    const int p = in.target;
    const int m = t.m;
    TieRule rule = rule_of(kind);
    auto from_deletion = [&](const Verdict& d) {
        Verdict v;
        v.nodes = d.nodes;
        if (d.decision != Decision::Yes) return v;
        // First part = the kept candidates (p is among them), second part = the deleted ones.
        std::vector<char> del(m, 0);
        for (int x : d.witness->candidates) del[x] = 1;
        std::vector<int> first;
        for (int c = 0; c < m; ++c)
            if (!del[c]) first.push_back(c);
        v.decision = Decision::Yes;
        v.witness = ControlAction{ControlAction::Kind::PartitionCandidates, first, {}};
        return v;
    };
    if (rule == TieRule::TE) return from_deletion(dcdc_greedy(t, a, p, m - 1, WinnerModel::Unique));
    Verdict nonunique = from_deletion(dcdc_greedy(t, a, p, m - 1, WinnerModel::Nonunique));
    if (in.model == WinnerModel::Nonunique || nonunique.decision == Decision::Yes) return nonunique;
    // TP, unique-winner model, and p wins every subelection it takes part in.
    std::vector<int> d1, d2;
    for (int c = 0; c < m; ++c) {
        if (c == p) continue;
        (t(p, c) > 0 ? d1 : d2).push_back(c);
    }
    Verdict v;
    v.nodes = nonunique.nodes + 1;
    if (d2.empty()) return v;
    v.decision = Decision::Yes;
    if (!a.is_one()) {
        d1.push_back(p);
        std::sort(d1.begin(), d1.end());
        v.witness = ControlAction{ControlAction::Kind::PartitionCandidates, d1, {}};
        return v;
    }
    auto all = all_candidates(m);
    auto s = scores_within(t, a, all);
    for (int d = 0; d < m; ++d)
        if (d != p && s[d] == a.den * (m - 1)) {
            v.witness = ControlAction{ControlAction::Kind::PartitionCandidates, all, {}};
            return v;
        }
    int c = d2.front();
    std::vector<int> first;
    for (int x = 0; x < m; ++x)
        if (x != c) first.push_back(x);
    v.witness = ControlAction{ControlAction::Kind::PartitionCandidates, first, {}};
    return v;
}

// Constructive control by adding an unlimited number of spoilers, alpha in {0, 1}.
inline Verdict ccacu_greedy(const ControlInstance& in) {
    Verdict v;
    const Alpha& a = in.alpha;
    if (!a.is_zero() && !a.is_one()) {
        v.decision = Decision::Unsupported;
        v.note = "adding an unlimited number of candidates is resistant for 0 < alpha < 1";
        return v;
    }
    const Tally& t = in.election.tally();
    const int p = in.target;
    std::vector<int> C = in.registered();
    std::vector<int> Dp;
    for (int d : in.spoilers)
        if (detail::pair_score(t, a, p, d) == a.den) Dp.push_back(d);
    while (true) {
        ++v.nodes;
        std::vector<int> sub = C;
        sub.insert(sub.end(), Dp.begin(), Dp.end());
        std::sort(sub.begin(), sub.end());
        int64_t sp = detail::score_in(t, a, sub, p);
        std::vector<int> keep;
        for (int d : Dp) {
            int64_t sd = detail::score_in(t, a, sub, d);
            bool bad = in.model == WinnerModel::Unique ? sp <= sd : sp < sd;
            if (!bad) keep.push_back(d);
        }
        if (keep.size() == Dp.size()) {
            if (goal_reached(true, in.model, winners_within(t, a, sub), p)) {
                v.decision = Decision::Yes;
                v.witness = ControlAction{ControlAction::Kind::AddCandidates, Dp, {}};
            }
            return v;
        }
        Dp = std::move(keep);
    }
}

}  // namespace copeland
