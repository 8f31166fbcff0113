#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "copeland/control.hpp"
#include "copeland/microbribery.hpp"
#include "copeland/problems.hpp"

namespace copeland {

constexpr int64_t kDefaultCap = 50'000'000;

struct OracleOptions {
    int64_t cap = kDefaultCap;
    int threads = 1;
};

namespace detail {

inline int64_t sat_add(int64_t a, int64_t b, int64_t lim) { return std::min(lim, a + b); }
inline int64_t sat_mul(int64_t a, int64_t b, int64_t lim) {
    if (a == 0 || b == 0) return 0;
    if (a > lim / b) return lim;
    return std::min(lim, a * b);
}

// Number of integer vectors x with 0 <= x_i <= ub_i and sum <= K (saturating at lim).
inline int64_t count_vectors(const std::vector<int64_t>& ub, int64_t K, int64_t lim) {
    K = std::max<int64_t>(K, 0);
    int64_t total_ub = 0;
    for (auto u : ub) total_ub = sat_add(total_ub, u, lim);
    if (K >= total_ub) {
        int64_t c = 1;
        for (auto u : ub) c = sat_mul(c, u + 1, lim);
        return c;
    }
    std::vector<int64_t> dp(K + 1, 0);  // dp[s] = vectors so far with sum exactly s
    dp[0] = 1;
    for (auto u : ub) {
        std::vector<int64_t> nd(K + 1, 0);
        for (int64_t s = 0; s <= K; ++s) {
            if (!dp[s]) continue;
            for (int64_t x = 0; x <= u && s + x <= K; ++x) nd[s + x] = sat_add(nd[s + x], dp[s], lim);
        }
        dp = std::move(nd);
    }
    int64_t c = 0;
    for (auto v : dp) c = sat_add(c, v, lim);
    return c;
}

// Depth-first enumeration of bounded vectors with sum <= K. `visit` returns true to stop.
// With several threads the leading entries are split among workers; the witness with the
// smallest prefix index wins, so results do not depend on scheduling.
inline std::optional<std::vector<int64_t>> search_vectors(const std::vector<int64_t>& ub, int64_t K, int threads,
                                                          const std::function<bool(const std::vector<int64_t>&)>& visit,
                                                          std::atomic<int64_t>& nodes) {
    const size_t n = ub.size();
    auto dfs = [&](std::vector<int64_t>& x, size_t i, int64_t left, auto&& self, const std::atomic<bool>* stop) -> bool {
        if (stop && stop->load(std::memory_order_relaxed)) return false;
        if (i == n) {
            nodes.fetch_add(1, std::memory_order_relaxed);
            return visit(x);
        }
        for (int64_t v = 0; v <= ub[i] && v <= left; ++v) {
            x[i] = v;
            if (self(x, i + 1, left - v, self, stop)) return true;
        }
        x[i] = 0;
        return false;
    };
    if (threads <= 1 || n == 0) {
        std::vector<int64_t> x(n, 0);
        if (dfs(x, 0, K, dfs, nullptr)) return x;
        return std::nullopt;
    }
    // Prefixes over the first few entries, in enumeration order.
    size_t depth = 0;
    int64_t width = 1;
    while (depth < n && width < 8LL * threads) width *= (ub[depth++] + 1);
    std::vector<std::vector<int64_t>> prefixes{{}};
    for (size_t d = 0; d < depth; ++d) {
        std::vector<std::vector<int64_t>> nx;
        for (auto& pr : prefixes) {
            int64_t used = 0;
            for (auto v : pr) used += v;
            for (int64_t v = 0; v <= ub[d] && used + v <= K; ++v) {
                auto q = pr;
                q.push_back(v);
                nx.push_back(std::move(q));
            }
        }
        prefixes = std::move(nx);
    }
    std::mutex mu;
    std::optional<std::pair<size_t, std::vector<int64_t>>> best;
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    auto worker = [&]() {
        while (true) {
            size_t idx = next.fetch_add(1);
            if (idx >= prefixes.size()) return;
            {
                std::lock_guard<std::mutex> g(mu);
                if (best && best->first < idx) return;
            }
            std::vector<int64_t> x(n, 0);
            int64_t used = 0;
            for (size_t d = 0; d < depth; ++d) {
                x[d] = prefixes[idx][d];
                used += x[d];
            }
            if (dfs(x, depth, K - used, dfs, nullptr)) {
                std::lock_guard<std::mutex> g(mu);
                if (!best || idx < best->first) best = std::make_pair(idx, x);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    (void)stop;
    if (best) return best->second;
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------- control

// Bounds and budget of the action space of a tag, as a bounded integer vector.
struct ActionSpace {
    std::vector<int> items;     // candidate ids for candidate actions
    std::vector<int64_t> ub;
    int64_t budget;
};

inline ActionSpace action_space(const ControlTag& tag, const ControlInstance& in) {
    ActionSpace s;
    const int64_t unlimited = INT64_MAX / 4;
    switch (tag.action) {
        case Action::AC:
        case Action::ACu:
            s.items = in.spoilers;
            s.ub.assign(s.items.size(), 1);
            s.budget = tag.action == Action::AC ? in.budget : unlimited;
            break;
        case Action::DC:
            for (int c = 0; c < in.election.m(); ++c)
                if (c != in.target) s.items.push_back(c);
            s.ub.assign(s.items.size(), 1);
            s.budget = in.budget;
            break;
        case Action::PC_TE:
        case Action::PC_TP:
        case Action::RPC_TE:
        case Action::RPC_TP:
            s.items = all_candidates(in.election.m());
            s.ub.assign(s.items.size(), 1);
            s.budget = unlimited;
            break;
        case Action::AV:
            for (const auto& b : in.pool) s.ub.push_back(b.mult);
            s.budget = in.budget;
            break;
        case Action::DV:
            for (const auto& b : in.election.voters()) s.ub.push_back(b.mult);
            s.budget = in.budget;
            break;
        case Action::PV_TE:
        case Action::PV_TP:
            for (const auto& b : in.election.voters()) s.ub.push_back(b.mult);
            s.budget = unlimited;
            break;
    }
    return s;
}

inline ControlAction action_from_vector(const ControlTag& tag, const ActionSpace& sp, const std::vector<int64_t>& x) {
    ControlAction a;
    auto chosen = [&]() {
        std::vector<int> c;
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i]) c.push_back(sp.items[i]);
        return c;
    };
    switch (tag.action) {
        case Action::AC:
        case Action::ACu: a = {ControlAction::Kind::AddCandidates, chosen(), {}}; break;
        case Action::DC: a = {ControlAction::Kind::DeleteCandidates, chosen(), {}}; break;
        case Action::PC_TE:
        case Action::PC_TP:
        case Action::RPC_TE:
        case Action::RPC_TP: a = {ControlAction::Kind::PartitionCandidates, chosen(), {}}; break;
        case Action::AV: a = {ControlAction::Kind::AddVoters, {}, x}; break;
        case Action::DV: a = {ControlAction::Kind::DeleteVoters, {}, x}; break;
        case Action::PV_TE:
        case Action::PV_TP: a = {ControlAction::Kind::PartitionVoters, {}, x}; break;
    }
    return a;
}

inline int64_t action_space_size(const ControlTag& tag, const ControlInstance& in, int64_t lim) {
    auto sp = action_space(tag, in);
    return detail::count_vectors(sp.ub, sp.budget, lim);
}

// Exhaustive search over the whole action space of the tag, each action replayed from scratch.
inline Verdict control_oracle(const ControlTag& tag, const ControlInstance& in, const OracleOptions& opt = {}) {
    Verdict v;
    auto sp = action_space(tag, in);
    int64_t size = detail::count_vectors(sp.ub, sp.budget, opt.cap + 1);
    if (size > opt.cap) {
        v.decision = Decision::CapExceeded;
        v.note = "action space exceeds the node cap";
        return v;
    }
    std::atomic<int64_t> nodes{0};
    auto found = detail::search_vectors(sp.ub, sp.budget, opt.threads, [&](const std::vector<int64_t>& x) {
        auto r = replay(tag, in, action_from_vector(tag, sp, x));
        return r.valid && r.success;
    }, nodes);
    v.nodes = nodes.load();
    if (found) {
        v.decision = Decision::Yes;
        v.witness = action_from_vector(tag, sp, *found);
    }
    return v;
}

// ---------------------------------------------------------------- microbribery

struct MicroOracleResult {
    Decision decision = Decision::No;
    std::optional<int64_t> cost;  // least successful cost within budget
    std::vector<Microbribe> witness;
    int64_t nodes = 0;
};

// Flips that shift vs(i,j) by 2*s (s > 0 moves voters toward i).
inline std::vector<Microbribe> flips_for_shift(const Election& e, int i, int j, int64_t s) {
    std::vector<Microbribe> out;
    if (s == 0) return out;
    int from = s > 0 ? j : i, to = s > 0 ? i : j;
    int64_t r = s > 0 ? s : -s, unit = 0;
    for (const auto& b : e.voters()) {
        if (r == 0) break;
        if (b.pref.prefers(from, to)) {
            int64_t take = std::min(r, b.mult);
            for (int64_t x = 0; x < take; ++x) out.push_back({unit + x, to, from});
            r -= take;
        }
        unit += b.mult;
    }
    return out;
}

// Exhaustive search over the net flip count of every candidate pair (flipping a voter
// twice on the same pair is never useful, so flip sets reduce to these shifts).
inline MicroOracleResult microbribery_oracle(Goal g, const Election& e, const Alpha& a, int p, int64_t k,
                                             WinnerModel model, const OracleOptions& opt = {}) {
    MicroOracleResult res;
    const int m = e.m();
    const int64_t n = e.total_voters();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.push_back({i, j});
    std::vector<int64_t> lo(pairs.size()), hi(pairs.size());
    for (size_t q = 0; q < pairs.size(); ++q) {
        int64_t v = e.vs(pairs[q].first, pairs[q].second);
        lo[q] = -(n + v) / 2;  // voters preferring i can move to j
        hi[q] = (n - v) / 2;
    }
    // Size check: number of shift vectors with sum |s| <= k.
    {
        int64_t lim = opt.cap + 1;
        std::vector<int64_t> dp(k + 1, 0);
        dp[0] = 1;
        for (size_t q = 0; q < pairs.size(); ++q) {
            std::vector<int64_t> nd(k + 1, 0);
            for (int64_t s = 0; s <= k; ++s) {
                if (!dp[s]) continue;
                for (int64_t c = 0; s + c <= k; ++c) {
                    int64_t ways = (c == 0) ? 1 : ((c <= hi[q] ? 1 : 0) + (c <= -lo[q] ? 1 : 0));
                    if (ways == 0) continue;
                    nd[s + c] = detail::sat_add(nd[s + c], detail::sat_mul(dp[s], ways, lim), lim);
                }
            }
            dp = std::move(nd);
        }
        int64_t total = 0;
        for (auto x : dp) total = detail::sat_add(total, x, lim);
        if (total > opt.cap) {
            res.decision = Decision::CapExceeded;
            return res;
        }
    }
    Tally t = e.tally();
    std::vector<int64_t> shift(pairs.size(), 0), best_shift;
    std::function<void(size_t, int64_t)> rec = [&](size_t q, int64_t used) {
        if (res.cost && used >= *res.cost) return;  // cannot improve
        if (q == pairs.size()) {
            ++res.nodes;
            auto w = winners(t, a, model);
            if (goal_reached(g == Goal::Constructive, model, w, p)) {
                res.cost = used;
                best_shift = shift;
            }
            return;
        }
        auto [i, j] = pairs[q];
        int64_t v0 = t(i, j);
        for (int64_t c = 0; used + c <= k; ++c) {
            for (int sgn : {1, -1}) {
                if (c == 0 && sgn < 0) continue;
                int64_t s = sgn * c;
                if (s < lo[q] || s > hi[q]) continue;
                t.vs[i * m + j] = v0 + 2 * s;
                t.vs[j * m + i] = -(v0 + 2 * s);
                shift[q] = s;
                rec(q + 1, used + c);
            }
        }
        t.vs[i * m + j] = v0;
        t.vs[j * m + i] = -v0;
        shift[q] = 0;
    };
    rec(0, 0);
    if (res.cost) {
        res.decision = Decision::Yes;
        for (size_t q = 0; q < pairs.size(); ++q) {
            auto f = flips_for_shift(e, pairs[q].first, pairs[q].second, best_shift[q]);
            res.witness.insert(res.witness.end(), f.begin(), f.end());
        }
    }
    return res;
}

// ---------------------------------------------------------------- bribery

struct BriberyWitness {
    std::vector<int64_t> removed;      // per voter block
    std::vector<Preference> replaced;  // new preferences of the bribed voters
};

struct BriberyOracleResult {
    Decision decision = Decision::No;
    std::optional<BriberyWitness> witness;
    int64_t nodes = 0;
};

inline std::vector<Preference> preference_universe(int m, bool rational) {
    std::vector<Preference> u;
    if (rational) {
        std::vector<int> o = all_candidates(m);
        do u.push_back(Preference::order(o));
        while (std::next_permutation(o.begin(), o.end()));
        return u;
    }
    int pairs = m * (m - 1) / 2;
    for (int64_t mask = 0; mask < (int64_t{1} << pairs); ++mask) {
        std::vector<uint8_t> b(static_cast<size_t>(m) * m, 0);
        int bit = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j, ++bit) {
                if ((mask >> bit) & 1)
                    b[j * m + i] = 1;
                else
                    b[i * m + j] = 1;
            }
        u.push_back(Preference::table(m, std::move(b)));
    }
    return u;
}

inline Election apply_bribery(const Election& e, const BriberyWitness& w) {
    std::vector<VoterBlock> v;
    for (size_t i = 0; i < e.voters().size(); ++i) {
        int64_t keep = e.voters()[i].mult - w.removed[i];
        if (keep > 0) v.push_back({e.voters()[i].pref, keep});
    }
    for (const auto& p : w.replaced) v.push_back({p, 1});
    return e.with_voters(std::move(v));
}

// Exhaustive bribery: which voters to bribe (a multiset over blocks) and what they report
// (a multiset over orders, or over tables when some voter is irrational).
inline BriberyOracleResult bribery_oracle(Goal g, const Election& e, const Alpha& a, int p, int64_t k,
                                          WinnerModel model, const OracleOptions& opt = {}) {
    BriberyOracleResult res;
    const int m = e.m();
    int64_t j = std::min<int64_t>(k, e.total_voters());
    bool rational = e.rational();
    // Universe size check before building it.
    int64_t usize = 1;
    if (rational)
        for (int i = 2; i <= m; ++i) usize = detail::sat_mul(usize, i, opt.cap + 1);
    else
        usize = (m * (m - 1) / 2 >= 62) ? opt.cap + 1 : std::min<int64_t>(opt.cap + 1, int64_t{1} << (m * (m - 1) / 2));
    // Multisets of size j from the universe: C(usize + j - 1, j).
    int64_t choose = 1;
    for (int64_t i = 1; i <= j; ++i) {
        choose = detail::sat_mul(choose, usize + i - 1, INT64_MAX / 4);
        choose /= i;
        if (choose > opt.cap) break;
    }
    std::vector<int64_t> ub;
    for (const auto& b : e.voters()) ub.push_back(b.mult);
    int64_t removed_count = 0;
    {
        // vectors with sum exactly j = (sum <= j) - (sum <= j-1)
        int64_t le = detail::count_vectors(ub, j, opt.cap + 1);
        int64_t lt = j > 0 ? detail::count_vectors(ub, j - 1, opt.cap + 1) : 0;
        removed_count = le >= opt.cap + 1 ? opt.cap + 1 : le - lt;
    }
    if (usize > opt.cap || choose > opt.cap || detail::sat_mul(choose, removed_count, opt.cap + 1) > opt.cap) {
        res.decision = Decision::CapExceeded;
        return res;
    }
    auto U = preference_universe(m, rational);
    std::vector<Tally> contrib;
    for (const auto& u : U) {
        Tally t(m);
        t.add(u, 1);
        contrib.push_back(std::move(t));
    }
    std::vector<Tally> block_contrib;
    for (const auto& b : e.voters()) {
        Tally t(m);
        t.add_blocks({{b.pref, 1}});
        block_contrib.push_back(std::move(t));
    }
    const Tally& base = e.tally();
    std::vector<int64_t> removed(ub.size(), 0);
    std::vector<int> chosen;
    Tally cur = base;
    auto addt = [&](const Tally& x, int64_t s) {
        for (size_t q = 0; q < cur.vs.size(); ++q) cur.vs[q] += s * x.vs[q];
    };
    std::function<bool(size_t, int)> pick = [&](size_t left, int from) -> bool {
        if (left == 0) {
            ++res.nodes;
            return goal_reached(g == Goal::Constructive, model, winners(cur, a, model), p);
        }
        for (int u = from; u < static_cast<int>(U.size()); ++u) {
            chosen.push_back(u);
            addt(contrib[u], 1);
            if (pick(left - 1, u)) return true;
            addt(contrib[u], -1);
            chosen.pop_back();
        }
        return false;
    };
    std::function<bool(size_t, int64_t)> remove = [&](size_t b, int64_t left) -> bool {
        if (b == ub.size()) {
            if (left != 0) return false;
            return pick(static_cast<size_t>(j), 0);
        }
        for (int64_t x = 0; x <= std::min(ub[b], left); ++x) {
            removed[b] = x;
            addt(block_contrib[b], -x);
            bool ok = remove(b + 1, left - x);
            addt(block_contrib[b], x);
            if (ok) return true;
        }
        removed[b] = 0;
        return false;
    };
    if (remove(0, j)) {
        res.decision = Decision::Yes;
        BriberyWitness w;
        w.removed = removed;
        for (int u : chosen) w.replaced.push_back(U[u]);
        res.witness = w;
    }
    return res;
}

// ---------------------------------------------------------------- source problems

struct CoverResult {
    Decision decision = Decision::No;
    std::vector<int> chosen;
    int64_t nodes = 0;
};

inline CoverResult x3c_oracle(const X3CInstance& x, const OracleOptions& opt = {}) {
    x.validate();
    CoverResult r;
    if (x.S.size() > 20) {
        r.decision = Decision::CapExceeded;
        return r;
    }
    std::vector<int> pick;
    std::vector<char> used(x.size(), 0);
    std::function<bool(size_t)> rec = [&](size_t from) -> bool {
        ++r.nodes;
        if (static_cast<int>(pick.size()) == x.k) return true;  // k disjoint triples cover all 3k elements
        if (r.nodes > opt.cap) return false;
        for (size_t i = from; i < x.S.size(); ++i) {
            const auto& s = x.S[i];
            if (used[s[0]] || used[s[1]] || used[s[2]]) continue;
            for (int e : s) used[e] = 1;
            pick.push_back(static_cast<int>(i));
            if (rec(i + 1)) return true;
            pick.pop_back();
            for (int e : s) used[e] = 0;
        }
        return false;
    };
    if (rec(0)) {
        r.decision = Decision::Yes;
        r.chosen = pick;
    }
    return r;
}

inline CoverResult vertex_cover_oracle(const VCInstance& g, const OracleOptions& opt = {}) {
    g.validate();
    CoverResult r;
    if (g.n() > 20) {
        r.decision = Decision::CapExceeded;
        return r;
    }
    for (int64_t mask = 0; mask < (int64_t{1} << g.n()); ++mask) {
        if (__builtin_popcountll(mask) > g.k) continue;
        ++r.nodes;
        bool ok = true;
        for (auto [u, v] : g.edges)
            if (!((mask >> u) & 1) && !((mask >> v) & 1)) {
                ok = false;
                break;
            }
        if (ok) {
            r.decision = Decision::Yes;
            for (int i = 0; i < g.n(); ++i)
                if ((mask >> i) & 1) r.chosen.push_back(i);
            return r;
        }
    }
    (void)opt;
    return r;
}

}  // namespace copeland
