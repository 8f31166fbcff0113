#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/control.hpp"
#include "copeland/microbribery.hpp"
#include "copeland/oracle.hpp"
#include "copeland/problems.hpp"
#include "copeland/tournament.hpp"
#include "copeland/two_stage.hpp"

// Instance generators for the hardness reductions (X3C -> bribery and voter control,
// vertex cover -> candidate control). Every generator records the scores and relative
// vote scores its construction promises and checks them on the generated election.

namespace copeland {

struct ReductionOptions {
    // Malformed or trivial sources produce a fixed two-candidate instance instead of an error.
    bool paper_convention = false;
};

struct StructureClaim {
    std::string claim;
    bool ok = false;
};

struct ReducedInstance {
    std::string tag;           // target problem, e.g. CCDC, DCAV, CC-BRIBERY, CONDORCET-CCPV
    std::string construction;  // which construction produced it
    bool bribery = false;
    ControlTag control{};
    Goal goal = Goal::Constructive;  // bribery only
    ControlInstance instance;        // election, target, budget, alpha, model, spoilers, pool
    bool canned = false;
    bool canned_answer = false;
    std::vector<StructureClaim> report;
    // Map a source certificate (chosen set indices / cover vertices) to a target action.
    std::function<ControlAction(const std::vector<int>&)> control_witness;
    std::function<BriberyWitness(const std::vector<int>&)> bribery_witness;

    bool structure_ok() const {
        return std::all_of(report.begin(), report.end(), [](const StructureClaim& c) { return c.ok; });
    }
    std::vector<std::string> failed_claims() const {
        std::vector<std::string> f;
        for (const auto& c : report)
            if (!c.ok) f.push_back(c.claim);
        return f;
    }
};

namespace detail {

// Scaled score whole + ties * alpha.
inline int64_t pts(const Alpha& a, int64_t whole, int64_t ties = 0) { return whole * a.den + ties * a.num; }

struct Claims {
    std::vector<StructureClaim>& out;
    void add(std::string what, bool ok) { out.push_back({std::move(what), ok}); }
    void eq(const std::string& what, int64_t got, int64_t want) {
        add(what + " (got " + std::to_string(got) + ", want " + std::to_string(want) + ")", got == want);
    }
};

inline std::vector<int> range_ids(int from, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) v[i] = from + i;
    return v;
}

inline std::vector<int> reversed(std::vector<int> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

inline std::vector<int> minus(const std::vector<int>& all, const std::vector<int>& drop) {
    std::vector<int> r;
    for (int x : all)
        if (std::find(drop.begin(), drop.end(), x) == drop.end()) r.push_back(x);
    return r;
}

inline Preference linear(int m, std::initializer_list<std::vector<int>> parts) {
    std::vector<int> o;
    for (const auto& p : parts) o.insert(o.end(), p.begin(), p.end());
    if (static_cast<int>(o.size()) != m) throw std::logic_error("construction order does not list every candidate");
    return Preference::order(std::move(o));
}

inline std::vector<int> ascending_rest(int m, const std::vector<int>& used) {
    std::vector<char> u(m, 0);
    for (int c : used) u[c] = 1;
    std::vector<int> r;
    for (int c = 0; c < m; ++c)
        if (!u[c]) r.push_back(c);
    return r;
}

// Fixed two-candidate instance: q beats p by one vote, nothing can be changed.
inline ReducedInstance canned(const std::string& tag, bool constructive, bool answer, const Alpha& a,
                              WinnerModel model) {
    ReducedInstance ri;
    ri.tag = tag;
    ri.construction = "canned";
    ri.canned = true;
    ri.canned_answer = answer;
    ri.instance.election = Election({"p", "q"}, {{Preference::order({1, 0}), 1}});
    int p = 0, q = 1;
    // constructive: p loses (NO), q wins (YES); destructive: q wins (NO), p does not (YES)
    ri.instance.target = constructive ? (answer ? q : p) : (answer ? p : q);
    ri.instance.budget = 0;
    ri.instance.alpha = a;
    ri.instance.model = model;
    ri.goal = constructive ? Goal::Constructive : Goal::Destructive;
    ri.control_witness = [](const std::vector<int>&) { return ControlAction{}; };
    ri.bribery_witness = [](const std::vector<int>&) { return BriberyWitness{{0}, {}}; };
    return ri;
}

// Candidate names for the ground set: the source names when they are safe, else b1..bN.
inline std::vector<std::string> element_names(const X3CInstance& x, int extra, const std::set<std::string>& reserved) {
    std::vector<std::string> names = x.names;
    for (int i = 0; i < extra; ++i) names.push_back("bx" + std::to_string(i + 1));
    std::set<std::string> seen;
    bool ok = true;
    for (const auto& n : names) {
        if (!valid_name(n) || reserved.count(n) || n.rfind("pad", 0) == 0 || !seen.insert(n).second) ok = false;
    }
    if (ok) return names;
    std::vector<std::string> b;
    for (size_t i = 0; i < names.size(); ++i) b.push_back("b" + std::to_string(i + 1));
    return b;
}

inline std::vector<int> triple_ids(const std::array<int, 3>& s, int b0) {
    std::vector<int> v{s[0] + b0, s[1] + b0, s[2] + b0};
    std::sort(v.begin(), v.end());
    return v;
}

// Pad a vertex cover with further vertices until it has exactly k members.
inline std::vector<int> cover_of_size(const std::vector<int>& cover, int n, int k) {
    std::vector<int> c = cover;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (int v = 0; v < n && static_cast<int>(c.size()) < k; ++v)
        if (!std::binary_search(c.begin(), c.end(), v)) {
            c.push_back(v);
            std::sort(c.begin(), c.end());
        }
    return c;
}

// Outcome table of the union of named parts.
struct CotBuilder {
    std::vector<std::string> names;
    Cot cot;
    explicit CotBuilder(std::vector<std::string> n) : names(std::move(n)), cot(static_cast<int>(names.size())) {}
    void paste(const Cot& c, const std::vector<int>& ids) {
        for (int i = 0; i < c.size(); ++i)
            for (int j = i + 1; j < c.size(); ++j) cot.set(ids[i], ids[j], c.sign(i, j));
    }
    void all(const std::vector<int>& xs, const std::vector<int>& ys, int sgn) {
        for (int x : xs)
            for (int y : ys) cot.set(x, y, sgn);
    }
    Election build() const { return mcgarvey({names, cot}); }
};

}  // namespace detail

// ---------------------------------------------------------------- bribery

// X3C to bribery. Constructive unique / destructive nonunique use the u,v construction;
// constructive nonunique / destructive unique use the s,t,u,v construction.
inline ReducedInstance x3c_to_bribery(const X3CInstance& x, Goal goal, WinnerModel model, const Alpha& a,
                                      const ReductionOptions& opt = {}) {
    x.validate();
    bool cc = goal == Goal::Constructive;
    std::string tag = cc ? "CC-BRIBERY" : "DC-BRIBERY";
    if (!x.covers_ground_set()) {
        if (opt.paper_convention) return detail::canned(tag, cc, false, a, model);
        throw std::invalid_argument("bribery reduction needs the sets to cover the ground set");
    }
    const int k = x.k, n = static_cast<int>(x.S.size()), nb = x.size();
    bool uv = (cc && model == WinnerModel::Unique) || (!cc && model == WinnerModel::Nonunique);
    std::vector<std::string> names = uv ? std::vector<std::string>{"u", "v", "p"}
                                        : std::vector<std::string>{"s", "t", "u", "v", "p"};
    int b0 = static_cast<int>(names.size());
    for (auto& s : detail::element_names(x, 0, {"s", "t", "u", "v", "p"})) names.push_back(s);
    const int m = static_cast<int>(names.size());
    const std::vector<int> B = detail::range_ids(b0, nb), rB = detail::reversed(B);
    using detail::linear;
    using detail::reversed;
    std::vector<VoterBlock> V;
    ReducedInstance ri;
    ri.tag = tag;
    ri.bribery = true;
    ri.goal = goal;
    ri.instance.alpha = a;
    ri.instance.model = model;
    ri.instance.budget = k;
    detail::Claims ck{ri.report};
    std::vector<std::vector<int>> Si(n), Bi(n);
    for (int i = 0; i < n; ++i) {
        Si[i] = detail::triple_ids(x.S[i], b0);
        Bi[i] = detail::minus(B, Si[i]);
    }
    if (uv) {
        const int u = 0, v = 1, p = 2;
        ri.construction = "uv";
        for (int i = 0; i < n; ++i) V.push_back({linear(m, {{u, v}, Si[i], {p}, Bi[i]}), 1});
        for (int i = 0; i < n; ++i) V.push_back({linear(m, {reversed(Bi[i]), {p, u, v}, reversed(Si[i])}), 1});
        V.push_back({linear(m, {{u, v, p}, B}), k});
        V.push_back({linear(m, {{v, u, p}, B}), k});
        V.push_back({linear(m, {{u}, rB, {p, v}}), k});
        V.push_back({linear(m, {{v}, rB, {p, u}}), k});
        V.push_back({linear(m, {B, {p, u, v}}), 1});
        ri.instance.election = Election(names, V);
        ri.instance.target = cc ? p : u;
        const Tally& t = ri.instance.election.tally();
        ck.eq("voter count 2n+4k+1", ri.instance.election.total_voters(), 2 * n + 4 * k + 1);
        ck.eq("vs(u,v) = 2n+1", t(u, v), 2 * n + 1);
        ck.eq("vs(u,p) = 2k-1", t(u, p), 2 * k - 1);
        ck.eq("vs(v,p) = 2k-1", t(v, p), 2 * k - 1);
        bool ub = true, bp = true, bb = true;
        for (int b : B) {
            ub = ub && t(u, b) == t(v, b) && t(u, b) >= 2 * k + 1;
            bp = bp && t(b, p) == 1;
            for (int c : B)
                if (c != b) bb = bb && (t(b, c) == 1 || t(b, c) == -1);
        }
        ck.add("vs(u,b) = vs(v,b) >= 2k+1 for every b", ub);
        ck.add("vs(b,p) = 1 for every b", bp);
        ck.add("|vs(b,b')| = 1 for all distinct b, b'", bb);
        auto sc = scores(t, a);
        ck.eq("score(u) = 3k+2", sc[u], detail::pts(a, 3 * k + 2));
        ck.eq("score(v) = 3k+1", sc[v], detail::pts(a, 3 * k + 1));
        ck.eq("score(p) = 0", sc[p], 0);
        bool bl = true;
        for (int b : B) bl = bl && sc[b] <= detail::pts(a, 3 * k);
        ck.add("score(b) <= 3k for every b", bl);
        ri.bribery_witness = [=](const std::vector<int>& cover) {
            BriberyWitness w;
            w.removed.assign(V.size(), 0);
            for (int i : cover) {
                w.removed[i] = 1;
                w.replaced.push_back(linear(m, {{p, u, v}, Si[i], Bi[i]}));
            }
            return w;
        };
    } else {
        const int s = 0, tt = 1, u = 2, v = 3, p = 4;
        ri.construction = "stuv";
        for (int i = 0; i < n; ++i) V.push_back({linear(m, {{s, tt, u, v}, Si[i], {p}, Bi[i]}), 1});
        for (int i = 0; i < n; ++i)
            V.push_back({linear(m, {reversed(Bi[i]), {p, v, u, tt, s}, reversed(Si[i])}), 1});
        V.push_back({linear(m, {{s, tt, u, v, p}, B}), k});
        V.push_back({linear(m, {{s, tt, v, u, p}, B}), k});
        V.push_back({linear(m, {{u}, rB, {p, s, v, tt}}), k});
        V.push_back({linear(m, {{v}, rB, {p, s, u, tt}}), k});
        V.push_back({linear(m, {{u, v, tt, p, s}, B}), 2 * k});
        V.push_back({linear(m, {{u, v, s, tt, p}, B}), 2 * k});
        V.push_back({linear(m, {{s, tt, u, v, p}, B}), 3 * k});
        V.push_back({linear(m, {{s, v, tt, u, p}, B}), 3 * k});
        V.push_back({linear(m, {{tt}, rB, {p, u, s, v}}), 3 * k});
        V.push_back({linear(m, {rB, {p, s, u, v, tt}}), k});
        V.push_back({linear(m, {{s}, rB, {p, u, v, tt}}), 3 * k});
        V.push_back({linear(m, {rB, {p, s, v, tt, u}}), 3 * k});
        V.push_back({linear(m, {B, {p, u, v, s, tt}}), 1});
        ri.instance.election = Election(names, V);
        ri.instance.target = cc ? p : s;
        const Tally& t = ri.instance.election.tally();
        ck.eq("voter count 2n+24k+1", ri.instance.election.total_voters(), 2 * n + 24 * k + 1);
        ck.eq("vs(s,p) = 2k-1", t(s, p), 2 * k - 1);
        ck.eq("vs(u,p) = 2k-1", t(u, p), 2 * k - 1);
        ck.eq("vs(v,p) = 2k-1", t(v, p), 2 * k - 1);
        auto big = [&](const std::string& nm, int x1, int x2) { ck.add("vs(" + nm + ") > 2k", t(x1, x2) > 2 * k); };
        big("s,t", s, tt);
        big("s,u", s, u);
        big("s,v", s, v);
        big("t,p", tt, p);
        big("t,u", tt, u);
        big("v,t", v, tt);
        big("u,v", u, v);
        bool xb = true, bp = true;
        for (int b : B) {
            for (int c : {s, tt, u, v}) xb = xb && t(c, b) > 2 * k;
            bp = bp && t(b, p) == 1;
        }
        ck.add("vs(x,b) > 2k for x in {s,t,u,v} and every b", xb);
        ck.add("vs(b,p) = 1 for every b", bp);
        auto sc = scores(t, a);
        ck.eq("score(s) = 3k+4", sc[s], detail::pts(a, 3 * k + 4));
        ck.eq("score(t) = 3k+2", sc[tt], detail::pts(a, 3 * k + 2));
        ck.eq("score(u) = 3k+2", sc[u], detail::pts(a, 3 * k + 2));
        ck.eq("score(v) = 3k+2", sc[v], detail::pts(a, 3 * k + 2));
        ck.eq("score(p) = 0", sc[p], 0);
        bool bl = true;
        for (int b : B) bl = bl && sc[b] <= detail::pts(a, 3 * k);
        ck.add("score(b) <= 3k for every b", bl);
        ri.bribery_witness = [=](const std::vector<int>& cover) {
            BriberyWitness w;
            w.removed.assign(V.size(), 0);
            for (int i : cover) {
                w.removed[i] = 1;
                w.replaced.push_back(linear(m, {{p, s, tt, u, v}, Si[i], Bi[i]}));
            }
            return w;
        };
    }
    return ri;
}

// ---------------------------------------------------------------- vertex cover -> candidate control

namespace detail {

// Deleting-candidates election: p, z, [z clone], e_1..e_m, vertices, t_0..t_2l.
struct DeleteGadget {
    std::vector<std::string> names;
    Cot cot;
    int p = 0, z = 1, zh = -1;
    std::vector<int> e, vtx, t;
    int ell = 0;
};

inline DeleteGadget delete_gadget(const VCInstance& g, bool unique) {
    DeleteGadget d;
    const int n = g.n(), m = g.m();
    d.ell = n + m;
    d.names = {"p", "z"};
    if (unique) {
        d.zh = 2;
        d.names.push_back("zh");
    }
    for (int j = 0; j < m; ++j) {
        d.e.push_back(static_cast<int>(d.names.size()));
        d.names.push_back("e" + std::to_string(j + 1));
    }
    for (int i = 0; i < n; ++i) {
        d.vtx.push_back(static_cast<int>(d.names.size()));
        d.names.push_back("v" + std::to_string(i + 1));
    }
    for (int i = 0; i <= 2 * d.ell; ++i) {
        d.t.push_back(static_cast<int>(d.names.size()));
        d.names.push_back("t" + std::to_string(i));
    }
    Cot c(static_cast<int>(d.names.size()));  // all ties to start
    std::vector<int> zs{d.z};
    if (unique) zs.push_back(d.zh);
    for (int z : zs) {
        c.set_win(d.p, z);
        for (int e : d.e) c.set_win(z, e);
        for (int t : d.t) c.set_win(t, z);
    }
    for (int j = 0; j < m; ++j) {
        auto [a, b] = g.edges[j];
        for (int i = 0; i < n; ++i) {
            bool inc = (i == a || i == b);
            if (inc)
                c.set_win(d.e[j], d.vtx[i]);
            else
                c.set_win(d.vtx[i], d.e[j]);
        }
    }
    for (int i = 0; i < n; ++i) c.set_win(d.vtx[i], d.p);
    Cot pad = pad_cot(d.ell);
    for (int x = 0; x < pad.size(); ++x)
        for (int y = x + 1; y < pad.size(); ++y) c.set(d.t[x], d.t[y], pad.sign(x, y));
    for (int t : d.t) {
        c.set_win(d.p, t);
        for (int e : d.e) c.set_win(e, t);
        for (int v : d.vtx) c.set_win(t, v);
    }
    d.cot = c;
    return d;
}

// Scores the deleting-candidates construction promises, checked inside `ids` (the gadget's
// candidates as placed in a larger election).
inline void check_delete_gadget(Claims& ck, const DeleteGadget& d, const Tally& t, const Alpha& a,
                                const std::vector<int>& ids, const VCInstance& g, const std::string& where) {
    const int n = g.n(), m = g.m(), ell = d.ell;
    bool unique = d.zh >= 0;
    auto sc = scores_within(t, a, ids);
    auto s = [&](int local) { return sc[local]; };
    int u = unique ? 1 : 0;
    ck.eq(where + "score(p) = m*alpha+1+2l+1" + (unique ? "+1" : ""), s(d.p), pts(a, 1 + 2 * ell + 1 + u, m));
    ck.eq(where + "score(z) = m+n*alpha" + (unique ? "+alpha" : ""), s(d.z), pts(a, m, n + u));
    if (unique) ck.eq(where + "score(zh) = score(z)", s(d.zh), s(d.z));
    bool ok = true;
    for (int e : d.e) ok = ok && s(e) == pts(a, 2 + 2 * ell + 1, m);
    ck.add(where + "score(e_i) = m*alpha+2+2l+1 for every edge", ok);
    ok = true;
    for (int v : d.vtx) ok = ok && s(v) <= pts(a, 1 + m, n + u);
    ck.add(where + "score(vertex) <= 1+m+n*alpha" + (unique ? "+alpha" : ""), ok);
    ok = true;
    for (int x : d.t) ok = ok && s(x) == pts(a, ell + n + 1 + u);
    ck.add(where + "score(t_i) = l+n+1" + (unique ? "+1" : ""), ok);
    std::vector<int> expect;
    if (unique) expect.push_back(ids[d.p]);
    for (int e : d.e) expect.push_back(ids[e]);
    std::sort(expect.begin(), expect.end());
    auto w = winners_within(t, a, ids);
    std::sort(w.begin(), w.end());
    ck.add(where + (unique ? "winners are p and the edge candidates" : "winners are exactly the edge candidates"),
           w == expect);
}

inline int count_in(const std::vector<int>& v, int x) { return static_cast<int>(std::count(v.begin(), v.end(), x)); }

// Alpha = t1/t2 in lowest terms; smallest k1 >= 1 with k1*alpha = k2 - 1/t2.
inline std::pair<int64_t, int64_t> epsilon_pair(const Alpha& a) {
    for (int64_t k1 = 1; k1 <= a.den; ++k1)
        if ((k1 * a.num + 1) % a.den == 0) return {k1, (k1 * a.num + 1) / a.den};
    throw std::invalid_argument("no epsilon pair for alpha " + a.str());
}

}  // namespace detail

inline ReducedInstance vc_to_candidate_control(const VCInstance& g, const ControlTag& tag, const Alpha& a,
                                               WinnerModel model, const ReductionOptions& opt = {}) {
    g.validate();
    const std::string tname = tag_name(tag);
    if (!tag.constructive || tag.condorcet || !is_candidate_action(tag.action))
        throw std::invalid_argument("no vertex cover reduction for " + tname);
    if (tag.action == Action::ACu && (a.is_zero() || a.is_one()))
        throw std::invalid_argument("CCACu is polynomial for alpha in {0,1}; no reduction");
    const int n = g.n(), m = g.m(), k = g.k;
    if (n < 1 || m < 1 || k >= std::min(n, m)) {
        if (opt.paper_convention) return detail::canned(tname, true, true, a, model);
        throw std::invalid_argument("vertex cover source is trivial (need n, m >= 1 and k < min(n, m))");
    }
    const bool unique = model == WinnerModel::Unique;
    ReducedInstance ri;
    ri.tag = tname;
    ri.control = tag;
    ri.instance.alpha = a;
    ri.instance.model = model;
    ri.instance.budget = k;
    detail::Claims ck{ri.report};
    const int ell = n + m;

    switch (tag.action) {
        case Action::DC: {
            ri.construction = unique ? "delete-unique" : "delete";
            auto d = detail::delete_gadget(g, unique);
            ri.instance.election = mcgarvey({d.names, d.cot});
            ri.instance.target = d.p;
            auto ids = all_candidates(ri.instance.election.m());
            detail::check_delete_gadget(ck, d, ri.instance.election.tally(), a, ids, g, "");
            ri.control_witness = [d, n, k](const std::vector<int>& cover) {
                ControlAction act{ControlAction::Kind::DeleteCandidates, {}, {}};
                for (int v : detail::cover_of_size(cover, n, k)) act.candidates.push_back(d.vtx[v]);
                return act;
            };
            return ri;
        }
        case Action::AC: {
            ri.construction = unique ? "add-unique" : "add";
            // core p, e_1..e_m, transitive in listing order; the scaffold fixes the totals
            std::vector<std::string> core{"p"};
            for (int j = 0; j < m; ++j) core.push_back("e" + std::to_string(j + 1));
            int nc = m + 1;
            Tally ct(nc);
            for (int i = 0; i < nc; ++i)
                for (int j = i + 1; j < nc; ++j) {
                    ct.vs[i * nc + j] = 2;
                    ct.vs[j * nc + i] = -2;
                }
            int64_t L2 = 2LL * ell * ell;
            std::vector<int64_t> W(nc, L2), T(nc, 0);
            W[0] = unique ? L2 : L2 - 1;
            auto plan = scored_plan(core, ct, ell, W, T, 2);
            int M0 = static_cast<int>(plan.names.size());
            std::vector<std::string> names = plan.names;
            std::vector<int> D;
            for (int i = 0; i < n; ++i) {
                D.push_back(static_cast<int>(names.size()));
                names.push_back("v" + std::to_string(i + 1));
            }
            detail::CotBuilder cb(names);
            cb.paste(Cot::from_tally(plan.vs), detail::range_ids(0, M0));
            std::vector<int> others;  // C minus the edge candidates
            others.push_back(0);
            for (int x = nc; x < M0; ++x) others.push_back(x);
            cb.all(others, D, 1);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i) {
                    bool inc = g.edges[j].first == i || g.edges[j].second == i;
                    cb.cot.set(D[i], 1 + j, inc ? 1 : -1);
                }
            for (int i = 0; i < n; ++i)
                for (int i2 = i + 1; i2 < n; ++i2) cb.cot.set_win(D[i], D[i2]);
            ri.instance.election = cb.build();
            ri.instance.spoilers = D;
            ri.instance.target = 0;
            auto C = detail::range_ids(0, M0);
            auto sc = scores_within(ri.instance.election.tally(), a, C);
            ck.eq(std::string("score(p) = 2l^2") + (unique ? "" : "-1"), sc[0], detail::pts(a, unique ? L2 : L2 - 1));
            bool ok = true;
            for (int j = 0; j < m; ++j) ok = ok && sc[1 + j] == detail::pts(a, L2);
            ck.add("score(e_i) = 2l^2 for every edge", ok);
            ok = true;
            for (int x = nc; x < M0; ++x) ok = ok && sc[x] <= detail::pts(a, L2 - n - 2);
            ck.add("padding scores <= 2l^2-n-2", ok);
            ri.control_witness = [D, n, k](const std::vector<int>& cover) {
                ControlAction act{ControlAction::Kind::AddCandidates, {}, {}};
                for (int v : detail::cover_of_size(cover, n, k)) act.candidates.push_back(D[v]);
                return act;
            };
            return ri;
        }
        case Action::ACu: {
            ri.construction = unique ? "add-unlimited-unique" : "add-unlimited";
            auto [k1, k2] = unique ? detail::epsilon_pair(a) : std::pair<int64_t, int64_t>{0, 0};
            // r ties q helpers when it needs more non-losses than the other opponents provide
            int q = static_cast<int>(std::max<int64_t>(0, k1 - k2 - 1 - m));
            std::vector<std::string> core{"p", "r"};
            for (int j = 0; j < m; ++j) core.push_back("e" + std::to_string(j + 1));
            for (int j = 0; j < q; ++j) core.push_back("g" + std::to_string(j + 1));
            int nc = static_cast<int>(core.size());
            int N = std::max(ell, nc);
            while (int64_t{N} * N < n + 3 + q) ++N;
            Tally ct(nc);
            for (int i = 0; i < nc; ++i)
                for (int j = i + 1; j < nc; ++j) {
                    int64_t v = (i == 1 && j >= 2 + m) ? 0 : 2;
                    ct.vs[i * nc + j] = v;
                    ct.vs[j * nc + i] = -v;
                }
            int64_t L2 = 2LL * N * N;
            std::vector<int64_t> W(nc), T(nc, 0);
            W[0] = L2 - 1;
            W[1] = unique ? L2 - 1 - k - k2 : L2 - 1 - k;
            T[1] = unique ? k + k1 : k;
            for (int j = 0; j < m; ++j) {
                W[2 + j] = L2 - 1;
                T[2 + j] = unique ? 0 : 1;
            }
            for (int j = 0; j < q; ++j) {
                W[2 + m + j] = q - 1 - j;  // core wins only: lose to every padding candidate
                T[2 + m + j] = 1;
            }
            auto plan = scored_plan(core, ct, N, W, T, 2);
            int M0 = static_cast<int>(plan.names.size());
            std::vector<std::string> names = plan.names;
            std::vector<int> D;
            for (int i = 0; i < n; ++i) {
                D.push_back(static_cast<int>(names.size()));
                names.push_back("v" + std::to_string(i + 1));
            }
            detail::CotBuilder cb(names);
            cb.paste(Cot::from_tally(plan.vs), detail::range_ids(0, M0));
            cb.all({0}, D, 0);
            std::vector<int> rest{1};
            for (int x = 2 + m; x < M0; ++x) rest.push_back(x);
            cb.all(rest, D, 1);
            for (int j = 0; j < m; ++j)
                for (int i = 0; i < n; ++i) {
                    bool inc = g.edges[j].first == i || g.edges[j].second == i;
                    cb.cot.set(D[i], 2 + j, inc ? 1 : 0);
                }
            for (int i = 0; i < n; ++i)
                for (int i2 = i + 1; i2 < n; ++i2) cb.cot.set_win(D[i], D[i2]);
            ri.instance.election = cb.build();
            ri.instance.spoilers = D;
            ri.instance.target = 0;
            auto C = detail::range_ids(0, M0);
            auto sc = scores_within(ri.instance.election.tally(), a, C);
            ck.eq("score(p) = 2l^2-1", sc[0], detail::pts(a, L2 - 1));
            // -epsilon = k1*alpha - k2
            ck.eq(std::string("score(r) = 2l^2-1-k+k*alpha") + (unique ? "-epsilon" : ""), sc[1],
                  detail::pts(a, W[1], T[1]));
            if (unique)
                ck.add("k1*alpha = k2 - epsilon", k1 * a.num * 1 == k2 * a.den - 1);
            bool ok = true;
            for (int j = 0; j < m; ++j) ok = ok && sc[2 + j] == detail::pts(a, L2 - 1, unique ? 0 : 1);
            ck.add(std::string("score(e_i) = 2l^2-1") + (unique ? "" : "+alpha") + " for every edge", ok);
            ok = true;
            for (int x = 2 + m; x < M0; ++x) ok = ok && sc[x] <= detail::pts(a, L2 - n - 2);
            ck.add("other scores <= 2l^2-n-2", ok);
            ri.control_witness = [D](const std::vector<int>& cover) {
                ControlAction act{ControlAction::Kind::AddCandidates, {}, {}};
                auto c = cover;
                std::sort(c.begin(), c.end());
                c.erase(std::unique(c.begin(), c.end()), c.end());
                for (int v : c) act.candidates.push_back(D[v]);
                return act;
            };
            return ri;
        }
        default: break;
    }

    // Partition of candidates: F is the deleting-candidates election, H a gadget around r.
    const Action act = tag.action;
    const bool rpc = act == Action::RPC_TE || act == Action::RPC_TP;
    bool f_unique = unique;
    if (act == Action::RPC_TE) f_unique = true;
    auto d = detail::delete_gadget(g, f_unique);
    const int nf = static_cast<int>(d.names.size());
    std::vector<std::string> hnames;
    Cot hcot;
    int64_t hl = 0;  // the l of the H score ladder
    std::string hname;
    if (act == Action::RPC_TP || act == Action::RPC_TE || act == Action::PC_TP) {
        int core_n = act == Action::RPC_TE ? 2 : (act == Action::RPC_TP ? 3 : 4);
        int N = std::max(core_n, k + 3);
        std::vector<std::string> core{"r"};
        for (int i = 1; i < core_n; ++i) core.push_back("h" + std::to_string(i));
        Tally ct(core_n);
        for (int i = 0; i < core_n; ++i)
            for (int j = i + 1; j < core_n; ++j) {
                ct.vs[i * core_n + j] = 1;
                ct.vs[j * core_n + i] = -1;
            }
        if (act == Action::PC_TP) {  // h1 > h2 > h3 > h1
            ct.vs[3 * core_n + 1] = 1;
            ct.vs[1 * core_n + 3] = -1;
        }
        hl = 2LL * N * N;
        std::vector<int64_t> W(core_n, hl - k - 1), T(core_n, 0);
        W[0] = hl;
        if (act == Action::RPC_TE) W[1] = hl - k;
        auto plan = scored_plan(core, ct, N, W, T, 1);
        hnames = plan.names;
        for (size_t i = core_n; i < hnames.size(); ++i) hnames[i] = "h" + std::to_string(i);
        hcot = Cot::from_tally(plan.vs);
        hname = act == Action::RPC_TE ? "ladder-te" : (act == Action::RPC_TP ? "ladder-tp" : "ladder-cycle");
    } else if (act == Action::PC_TE && a.is_one()) {
        int L = 2 * k + 4;
        hnames = {"r"};
        for (int i = 1; i <= L; ++i) hnames.push_back("h" + std::to_string(i));
        hcot = Cot(L + 1);
        Cot reg = pad_cot(k + 1);  // h2..hL
        for (int x = 0; x < reg.size(); ++x)
            for (int y = x + 1; y < reg.size(); ++y) hcot.set(2 + x, 2 + y, reg.sign(x, y));
        for (int x = 0; x < L - 1; ++x) hcot.set(1, 2 + x, x < L - k - 1 ? 1 : -1);
        hl = L;
        hname = "tied-r";
    } else {
        hnames = {"r", "rh"};
        for (int i = 1; i <= k; ++i) hnames.push_back("h" + std::to_string(i));
        hcot = Cot(k + 2);
        for (int i = 0; i < k; ++i) {
            hcot.set_win(1, 2 + i);
            for (int j = i + 1; j < k; ++j) hcot.set_win(2 + i, 2 + j);
        }
        hname = "r-rh";
    }
    const int nh = static_cast<int>(hnames.size());
    std::vector<std::string> names = d.names;
    names.insert(names.end(), hnames.begin(), hnames.end());
    detail::CotBuilder cb(names);
    auto F = detail::range_ids(0, nf), H = detail::range_ids(nf, nh);
    const int r = nf;
    cb.paste(d.cot, F);
    cb.paste(hcot, H);
    if (hname == "r-rh") {
        cb.all(F, std::vector<int>(H.begin() + 1, H.end()), 0);
        cb.all({r}, F, 1);
    } else {
        cb.all(F, {r}, 1);
        cb.all(std::vector<int>(H.begin() + 1, H.end()), F, 1);
    }
    ri.construction = std::string(f_unique ? "delete-unique" : "delete") + "+" + hname;
    ri.instance.election = cb.build();
    ri.instance.target = d.p;
    const Tally& t = ri.instance.election.tally();
    detail::check_delete_gadget(ck, d, t, a, F, g, "F: ");
    auto hs = scores_within(t, a, H);
    if (hname == "ladder-tp" || hname == "ladder-te" || hname == "ladder-cycle") {
        bool ties = false;
        for (int x : H)
            for (int y : H)
                if (x != y && t(x, y) == 0) ties = true;
        ck.add("H has no head-to-head ties", !ties);
        ck.eq("H: score(r) = l", hs[0], detail::pts(a, hl));
        if (hname == "ladder-te") {
            ck.eq("H: score(h1) = l-k", hs[1], detail::pts(a, hl - k));
            bool ok = true;
            for (int i = 2; i < nh; ++i) ok = ok && hs[i] < detail::pts(a, hl - k - 1);
            ck.add("H: score(h_i) < l-k-1 for i >= 2", ok);
        } else {
            int top = hname == "ladder-tp" ? 2 : 3;
            bool ok = true;
            for (int i = 1; i <= top; ++i) ok = ok && hs[i] == detail::pts(a, hl - k - 1);
            ck.add("H: score(h_i) = l-k-1 for i <= " + std::to_string(top), ok);
            ok = true;
            for (int i = top + 1; i < nh; ++i) ok = ok && hs[i] <= detail::pts(a, hl - k - 1);
            ck.add("H: score(h_i) <= l-k-1 for the rest", ok);
            if (hname == "ladder-cycle") {
                ck.add("H: h1>h2>h3>h1 and r beats h1,h2,h3",
                       t(H[1], H[2]) > 0 && t(H[2], H[3]) > 0 && t(H[3], H[1]) > 0 && t(r, H[1]) > 0 &&
                           t(r, H[2]) > 0 && t(r, H[3]) > 0);
            }
        }
    } else if (hname == "tied-r") {
        auto h1 = scores_within(t, Alpha::one(), H);
        ck.eq("H: score1(r) = l", h1[0], hl);
        ck.eq("H: score1(h1) = l-k", h1[1], hl - k);
        bool ok = true, tie = true;
        for (int i = 2; i < nh; ++i) ok = ok && h1[i] < hl - k;
        for (int i = 1; i < nh; ++i) tie = tie && t(r, H[i]) == 0;
        ck.add("H: score1(h) < l-k for the rest", ok);
        ck.add("H: r ties every h", tie);
    } else {
        ck.eq("H: score(r) = k*alpha+alpha", hs[0], detail::pts(a, 0, k + 1));
        ck.eq("H: score(rh) = k+alpha", hs[1], detail::pts(a, k, 1));
        bool ok = true;
        for (int i = 2; i < nh; ++i) ok = ok && hs[i] <= detail::pts(a, k - 1, 1);
        ck.add("H: score(h_i) <= k-1+alpha", ok);
    }
    bool cross = true;
    for (int f : F) {
        if (hname == "r-rh") {
            cross = cross && t(r, f) > 0;
            for (int i = 1; i < nh; ++i) cross = cross && t(H[i], f) == 0;
        } else {
            cross = cross && t(f, r) > 0;
            for (int i = 1; i < nh; ++i) cross = cross && t(H[i], f) > 0;
        }
    }
    ck.add(hname == "r-rh" ? "r beats F, the rest of H ties F" : "F beats r, the rest of H beats F", cross);
    ri.control_witness = [d, F, H, n, k, rpc](const std::vector<int>& cover) {
        ControlAction out{ControlAction::Kind::PartitionCandidates, {}, {}};
        std::vector<int> D;
        for (int v : detail::cover_of_size(cover, n, k)) D.push_back(d.vtx[v]);
        if (rpc) {
            out.candidates = detail::minus(F, D);  // F - D against H + D
        } else {
            out.candidates = H;  // first stage H + D
            out.candidates.insert(out.candidates.end(), D.begin(), D.end());
            std::sort(out.candidates.begin(), out.candidates.end());
        }
        return out;
    };
    return ri;
}

// ---------------------------------------------------------------- X3C -> voter control

namespace detail {

struct VoterProfile {
    std::vector<std::string> names;
    std::vector<VoterBlock> blocks;
    std::vector<int> v_block;    // block of v_i per set
    std::vector<int> hat;        // blocks outside the deleting-voters profile (the s voters)
    int p = 0, r = 1, rh = -1, s = -1;
    std::vector<int> B;
};

// Deleting-voters profiles, optionally with s appended last and a block of s-first voters.
// kind: 0 = tie-everything (alpha 1), 1 = unique, 2 = with the r clone (alpha < 1).
inline VoterProfile delete_voters_profile(const X3CInstance& x, int kind, int s_voters, int pr_voters) {
    VoterProfile vp;
    const int n = static_cast<int>(x.S.size()), k = x.k;
    vp.names = {"p", "r"};
    if (kind == 2) {
        vp.rh = 2;
        vp.names.push_back("rh");
    }
    if (s_voters >= 0) {
        vp.s = static_cast<int>(vp.names.size());
        vp.names.push_back("s");
    }
    int b0 = static_cast<int>(vp.names.size());
    for (auto& nm : element_names(x, 0, {"p", "r", "rh", "s"})) vp.names.push_back(nm);
    const int m = static_cast<int>(vp.names.size());
    vp.B = range_ids(b0, x.size());
    const auto& B = vp.B;
    const int p = vp.p, r = vp.r, rh = vp.rh, s = vp.s;
    auto opt = [](int c) { return c >= 0 ? std::vector<int>{c} : std::vector<int>{}; };
    auto add = [&](Preference pr, int64_t mult) {
        if (mult > 0) vp.blocks.push_back({std::move(pr), mult});
    };
    if (s_voters > 0) {
        vp.hat.push_back(static_cast<int>(vp.blocks.size()));
        add(linear(m, {{s, r}, opt(rh), B, {p}}), s_voters);
    }
    int front = kind == 0 ? n - 1 : (kind == 1 ? n - 1 : n - 2);
    add(linear(m, {B, {p, r}, opt(rh), opt(s)}), front);
    add(linear(m, {{p, r}, opt(rh), B, opt(s)}), pr_voters);
    for (int i = 0; i < n; ++i) {
        auto Si = triple_ids(x.S[i], b0);
        auto Bi = minus(B, Si);
        vp.v_block.push_back(static_cast<int>(vp.blocks.size()));
        add(linear(m, {{r}, opt(rh), Bi, {p}, Si, opt(s)}), 1);
        add(linear(m, {{r}, opt(rh), Si, {p}, Bi, opt(s)}), 1);
    }
    if (kind == 2) {
        add(linear(m, {{r, p, rh}, B, opt(s)}), 1);
        add(linear(m, {B, {p, r, rh}, opt(s)}), 1);
    }
    (void)k;
    return vp;
}

inline void check_delete_voters(Claims& ck, const VoterProfile& vp, const Tally& t, int kind, int n, int k,
                                const std::string& where) {
    const int p = vp.p, r = vp.r, rh = vp.rh;
    int64_t rb = kind == 0 ? 2 * n - k + 2 : (kind == 1 ? 2 * n - k + 3 : 2 * n - k + 4);
    int64_t bp = kind == 0 ? k - 2 : (kind == 1 ? k - 3 : k - 4);
    int64_t rp = kind == 0 ? k : (kind == 1 ? k - 1 : k);
    bool ok1 = true, ok2 = true, ok3 = true;
    for (int b : vp.B) {
        ok1 = ok1 && t(r, b) == rb;
        ok2 = ok2 && t(b, p) == bp;
        if (rh >= 0) ok3 = ok3 && t(rh, b) == rb;
    }
    std::string rbs = kind == 0 ? "2n-k+2" : (kind == 1 ? "2n-k+3" : "2n-k+4");
    std::string bps = kind == 0 ? "k-2" : (kind == 1 ? "k-3" : "k-4");
    ck.add(where + "vs(r,b) = " + rbs + " for every b", ok1);
    ck.add(where + "vs(b,p) = " + bps + " for every b", ok2);
    ck.eq(where + "vs(r,p) = " + std::string(kind == 1 ? "k-1" : "k"), t(r, p), rp);
    if (rh >= 0) {
        ck.add(where + "vs(rh,b) = 2n-k+4 for every b", ok3);
        ck.eq(where + "vs(r,rh) = 4n-k+2", t(r, rh), 4 * n - k + 2);
        ck.eq(where + "vs(rh,p) = k-2", t(rh, p), k - 2);
    }
}

}  // namespace detail

inline ReducedInstance x3c_to_voter_control(const X3CInstance& x, const ControlTag& tag, const Alpha& a,
                                            WinnerModel model, const ReductionOptions& opt = {}) {
    x.validate();
    const std::string tname = tag_name(tag);
    if (is_candidate_action(tag.action)) throw std::invalid_argument("no X3C reduction for " + tname);
    if (tag.condorcet && !(tag.action == Action::DV || tag.action == Action::PV_TP))
        throw std::invalid_argument("no X3C reduction for " + tname);
    const bool cc = tag.constructive;
    ReducedInstance ri;
    ri.tag = tname;
    ri.control = tag;
    ri.instance.alpha = a;
    ri.instance.model = model;
    detail::Claims ck{ri.report};

    if (tag.action == Action::AV) {
        // Lift k to an odd value of at least 5 with forced disjoint triples on new elements.
        X3CInstance y = x;
        int extra = 0;
        while (y.k % 2 == 0 || y.k < 5) {
            int base = y.size();
            y.S.push_back({base, base + 1, base + 2});
            for (int i = 0; i < 3; ++i) y.names.push_back("");
            y.k += 1;
            extra += 3;
        }
        const int k = y.k, nsets = static_cast<int>(y.S.size()), added = nsets - static_cast<int>(x.S.size());
        bool unique_scaffold = (cc && model == WinnerModel::Unique) || (!cc && model == WinnerModel::Nonunique);
        ri.construction = std::string("add-voters") + (unique_scaffold ? "-unique" : "") +
                          (added ? " (k lifted to " + std::to_string(k) + ")" : "");
        std::vector<std::string> core{"p", "r", "s"};
        auto en = detail::element_names(x, extra, {"p", "r", "s"});
        core.insert(core.end(), en.begin(), en.end());
        const int nc = static_cast<int>(core.size()), p = 0, r = 1, s = 2, b0 = 3;
        const int64_t U = k + 1;
        Tally ct(nc);
        auto set = [&](int i, int j, int64_t v) {
            ct.vs[i * nc + j] = v;
            ct.vs[j * nc + i] = -v;
        };
        for (int i = 0; i < nc; ++i)
            for (int j = i + 1; j < nc; ++j) set(i, j, U);
        set(s, p, k - 1);
        for (int b = b0; b < nc; ++b) set(r, b, k - 3);
        const int N = nc;  // 3k+3
        const int64_t L2 = 2LL * N * N, ell = L2 - 3 * k;
        std::vector<int64_t> W(nc, ell - 3), T(nc, 0);
        W[r] = ell + 3 * k;
        W[p] = unique_scaffold ? ell : ell - 1;
        auto plan = scored_plan(core, ct, N, W, T, U);
        ri.instance.election = realize_vs(plan.names, plan.vs);
        const int M = ri.instance.election.m();
        std::vector<int> B = detail::range_ids(b0, 3 * k);
        for (int i = 0; i < nsets; ++i) {
            auto Si = detail::triple_ids(y.S[i], b0);
            auto Bi = detail::minus(B, Si);
            std::vector<int> head{p};
            head.insert(head.end(), Bi.begin(), Bi.end());
            head.push_back(r);
            head.insert(head.end(), Si.begin(), Si.end());
            auto rest = detail::ascending_rest(M, head);
            head.insert(head.end(), rest.begin(), rest.end());
            ri.instance.pool.push_back({Preference::order(head), 1});
        }
        ri.instance.budget = k;
        ri.instance.target = cc ? p : r;
        const Tally& t = ri.instance.election.tally();
        auto sc = scores(t, a);
        ck.eq(std::string("score(p) = l") + (unique_scaffold ? "" : "-1"), sc[p],
              detail::pts(a, unique_scaffold ? ell : ell - 1));
        ck.eq("score(r) = l+3k", sc[r], detail::pts(a, ell + 3 * k));
        bool ok = true;
        for (int c = 0; c < M; ++c)
            if (c != p && c != r) ok = ok && sc[c] < detail::pts(a, ell - 1);
        ck.add("all other scores < l-1", ok);
        ck.eq("vs(s,p) = k-1", t(s, p), k - 1);
        ok = true;
        for (int b : B) ok = ok && t(r, b) == k - 3;
        ck.add("vs(r,b) = k-3 for every b", ok);
        ok = true;
        for (int i = 0; i < M && ok; ++i)
            for (int j = i + 1; j < M; ++j) {
                bool special = (i == p && j == s) || (i == r && j >= b0 && j < b0 + 3 * k);
                if (!special && (t(i, j) < 0 ? -t(i, j) : t(i, j)) < k + 1) {
                    ok = false;
                    break;
                }
            }
        ck.add("every other |vs| >= k+1", ok);
        ck.add("registered voter count is even", ri.instance.election.total_voters() % 2 == 0);
        const int n0 = static_cast<int>(x.S.size());
        ri.control_witness = [nsets, n0](const std::vector<int>& cover) {
            ControlAction act{ControlAction::Kind::AddVoters, {}, std::vector<int64_t>(nsets, 0)};
            for (int i : cover) act.counts[i] = 1;
            for (int i = n0; i < nsets; ++i) act.counts[i] = 1;
            return act;
        };
        return ri;
    }

    const int n = static_cast<int>(x.S.size()), k = x.k;
    if (n < k || k <= 2) {
        if (opt.paper_convention) {
            bool yes = n >= k && x3c_oracle(x).decision == Decision::Yes;
            return detail::canned(tname, cc, yes, a, model);
        }
        throw std::invalid_argument("voter-control reductions need n >= k and k > 2");
    }
    ri.instance.budget = k;
    ri.instance.target = (cc || tag.condorcet) ? 0 : 1;  // p or r

    int kind = 1, s_voters = -1, pr = n - k + 2;
    bool partition = tag.action != Action::DV;
    if (tag.action == Action::DV) {
        bool uc = tag.condorcet || (cc && model == WinnerModel::Unique) || (!cc && model == WinnerModel::Nonunique);
        kind = uc ? 1 : (a.is_one() ? 0 : 2);
        pr = kind == 0 ? n - k + 1 : n - k + 2;
        ri.construction = uc ? "delete-voters-unique" : (kind == 0 ? "delete-voters-ties" : "delete-voters-clone");
        if (tag.condorcet) ri.construction = "delete-voters-unique (Condorcet)";
    } else if (tag.action == Action::PV_TP || cc) {
        kind = 1;
        s_voters = k + 1;
        if (tag.action == Action::PV_TE && a.is_one()) s_voters = k;
        ri.construction = tag.action == Action::PV_TP ? "partition-voters" : (a.is_one() ? "partition-voters-k" : "partition-voters");
        if (tag.condorcet) ri.construction = "partition-voters (Condorcet)";
    } else if (a.is_one()) {  // DCPV-TE, alpha 1
        kind = 0;
        s_voters = k;
        pr = n - k + 1;
        ri.construction = "partition-voters-ties";
    } else {  // DCPV-TE, alpha < 1
        kind = 2;
        s_voters = k + 1;
        ri.construction = "partition-voters-clone";
    }
    auto vp = detail::delete_voters_profile(x, kind, partition ? s_voters : -1, pr);
    ri.instance.election = Election(vp.names, vp.blocks);
    const Election& e = ri.instance.election;
    std::vector<int64_t> hat_counts;  // the voters outside the s block
    for (size_t i = 0; i < vp.blocks.size(); ++i) hat_counts.push_back(vp.blocks[i].mult);
    for (int b : vp.hat) hat_counts[b] = 0;
    Tally that = first_part_tally(e, hat_counts);
    int64_t hat_total = 0;
    for (auto c : hat_counts) hat_total += c;
    int64_t want_total = kind == 0 ? 4 * n - k : (kind == 1 ? 4 * n - k + 1 : 4 * n - k + 2);
    ck.eq(partition ? "voters outside the s block" : "voter count", hat_total, want_total);
    detail::check_delete_voters(ck, vp, that, kind, n, k, partition ? "without s voters: " : "");
    if (partition) {
        bool last = true;
        for (int c = 0; c < e.m(); ++c)
            if (c != vp.s) last = last && that(c, vp.s) == hat_total;
        ck.add("s is ranked last outside the s block", last);
        int64_t sv = 0;
        for (int b : vp.hat) sv += vp.blocks[b].mult;
        ck.eq("s-first voters", sv, s_voters);
        if (tag.condorcet) {
            bool only_s = true;
            for (int c = 0; c < e.m(); ++c)
                if (c != vp.p) only_s = only_s && ((e.vs(vp.p, c) > 0) == (c == vp.s));
            ck.add("s is the only candidate p defeats", only_s);
        }
    }
    auto vb = vp.v_block;
    auto blocks = vp.blocks;
    auto hat = vp.hat;
    ri.control_witness = [vb, blocks, hat, partition](const std::vector<int>& cover) {
        if (!partition) {
            ControlAction act{ControlAction::Kind::DeleteVoters, {}, std::vector<int64_t>(blocks.size(), 0)};
            for (int i : cover) act.counts[vb[i]] = 1;
            return act;
        }
        // first part: everything except the s voters and the cover's v_i
        ControlAction act{ControlAction::Kind::PartitionVoters, {}, {}};
        for (const auto& b : blocks) act.counts.push_back(b.mult);
        for (int h : hat) act.counts[h] = 0;
        for (int i : cover) act.counts[vb[i]] = 0;
        return act;
    };
    return ri;
}

inline ReducedInstance x3c_to_condorcet(const X3CInstance& x, Action action, const ReductionOptions& opt = {}) {
    if (action != Action::DV && action != Action::PV_TP && action != Action::PV_TE)
        throw std::invalid_argument("Condorcet reductions exist for DV and PV only");
    ControlTag tag{true, action == Action::DV ? Action::DV : Action::PV_TP, true};
    return x3c_to_voter_control(x, tag, Alpha::half(), WinnerModel::Unique, opt);
}

// ---------------------------------------------------------------- verification helpers

// Does the action derived from a source certificate achieve the goal on the reduced instance?
inline bool forward_holds(const ReducedInstance& ri, const std::vector<int>& certificate) {
    const auto& in = ri.instance;
    if (ri.bribery) {
        auto w = ri.bribery_witness(certificate);
        int64_t bribed = 0;
        for (auto c : w.removed) bribed += c;
        if (bribed > in.budget || static_cast<int64_t>(w.replaced.size()) != bribed) return false;
        auto after = apply_bribery(in.election, w);
        return goal_reached(ri.goal == Goal::Constructive, in.model, winners(after, in.alpha), in.target);
    }
    auto r = replay(ri.control, in, ri.control_witness(certificate));
    return r.valid && r.success;
}

// Exhaustive decision on the reduced instance.
inline Decision reduced_decision(const ReducedInstance& ri, const OracleOptions& opt = {}) {
    const auto& in = ri.instance;
    if (ri.bribery)
        return bribery_oracle(ri.goal, in.election, in.alpha, in.target, in.budget, in.model, opt).decision;
    if (ri.canned) {
        // the canned instance has no actions to search beyond the identity
        return control_oracle(ControlTag{ri.goal == Goal::Constructive, Action::DV, false}, in, opt).decision;
    }
    return control_oracle(ri.control, in, opt).decision;
}

}  // namespace copeland
