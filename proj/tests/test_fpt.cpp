#include <gtest/gtest.h>

#include <set>

#include "copeland/fpt.hpp"
#include "fixtures.hpp"

using namespace copeland;

TEST(Cots, Counts) {
    EXPECT_EQ(enumerate_cots(1).size(), 1u);
    EXPECT_EQ(enumerate_cots(2).size(), 3u);
    EXPECT_EQ(enumerate_cots(3).size(), 27u);
    EXPECT_EQ(enumerate_cots(4).size(), 729u);
    EXPECT_THROW(enumerate_cots(6), std::invalid_argument);
    auto c = enumerate_cots(3);
    std::set<std::vector<int>> distinct;
    for (const auto& t : c) {
        std::vector<int> s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.push_back(t.sign(i, j));
        distinct.insert(s);
    }
    EXPECT_EQ(distinct.size(), 27u);
    // First table is all ties.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(c[0].sign(i, j), 0);
}

TEST(Ilp, Trivial) {
    using R = LinearConstraint::Rel;
    IntProblem p;
    p.add_var(0, 5);
    p.add({1}, R::GE, 3);
    auto x = ilp_feasible(p);
    ASSERT_TRUE(x);
    EXPECT_GE((*x)[0], 3);
    IntProblem q;
    q.add_var(0, 5);
    q.add({1}, R::GE, 4);
    q.add({1}, R::LE, 2);
    EXPECT_FALSE(ilp_feasible(q));
    IntProblem none;
    EXPECT_TRUE(ilp_feasible(none));
}

TEST(Ilp, MatchesGridScan) {
    using R = LinearConstraint::Rel;
    std::mt19937_64 rng(61);
    int feasible = 0;
    for (int it = 0; it < 400; ++it) {
        int n = 1 + static_cast<int>(rng() % 6);
        IntProblem p;
        for (int i = 0; i < n; ++i) p.add_var(0, static_cast<int64_t>(rng() % 5));
        int nc = 1 + static_cast<int>(rng() % 4);
        for (int c = 0; c < nc; ++c) {
            std::vector<int64_t> coef(n);
            for (auto& x : coef) x = static_cast<int64_t>(rng() % 7) - 3;
            p.add(coef, static_cast<R>(rng() % 3), static_cast<int64_t>(rng() % 9) - 4);
        }
        // Grid scan.
        bool any = false;
        std::vector<int64_t> x(n, 0);
        std::function<void(int)> scan = [&](int i) {
            if (any) return;
            if (i == n) {
                any = satisfies(p, x);
                return;
            }
            for (int64_t v = p.lo[i]; v <= p.hi[i] && !any; ++v) {
                x[i] = v;
                scan(i + 1);
            }
        };
        scan(0);
        auto got = ilp_feasible(p);
        ASSERT_EQ(got.has_value(), any) << "it " << it;
        if (got) {
            EXPECT_TRUE(satisfies(p, *got));
            ++feasible;
        }
    }
    EXPECT_GT(feasible, 50);
}

TEST(Ilp, LargeDomains) {
    using R = LinearConstraint::Rel;
    IntProblem p;
    p.add_var(0, 1 << 20);
    p.add_var(0, 1 << 20);
    p.add({1, -1}, R::EQ, 12345);
    p.add({1, 1}, R::GE, 1000001);
    auto x = ilp_feasible(p);
    ASSERT_TRUE(x);
    EXPECT_TRUE(satisfies(p, *x));
}

namespace {

ControlInstance voter_instance(int m, int units, std::mt19937_64& rng, bool pool) {
    ControlInstance in;
    std::vector<VoterBlock> v;
    int left = units;
    while (left > 0) {
        int64_t mult = 1 + static_cast<int64_t>(rng() % std::min(left, 3));
        v.push_back({rng() % 4 == 0 ? fixtures::random_table(m, rng) : fixtures::random_order(m, rng), mult});
        left -= static_cast<int>(mult);
    }
    in.election = Election(fixtures::names(m), v);
    if (pool) {
        int pu = static_cast<int>(rng() % 5);
        for (int i = 0; i < pu; ++i) in.pool.push_back({fixtures::random_order(m, rng), 1});
    }
    in.target = static_cast<int>(rng() % m);
    in.budget = static_cast<int64_t>(rng() % 4);
    in.alpha = fixtures::random_alpha(rng);
    in.model = rng() % 2 ? WinnerModel::Unique : WinnerModel::Nonunique;
    return in;
}

ControlInstance expanded(const ControlInstance& in) {
    ControlInstance out = in;
    out.election = in.election.expanded();
    std::vector<VoterBlock> p;
    for (const auto& b : in.pool)
        for (int64_t u = 0; u < b.mult; ++u) p.push_back({b.pref, 1});
    out.pool = p;
    return out;
}

}  // namespace

TEST(FptPv, MatchesBruteForce) {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 250; ++it) {
        int m = 1 + static_cast<int>(rng() % 3);
        auto in = voter_instance(m, static_cast<int>(rng() % 7), rng, false);
        for (bool cc : {true, false})
            for (Action a : {Action::PV_TE, Action::PV_TP}) {
                ControlTag tag{cc, a, false};
                auto got = fpt_pv(rule_of(a), cc, in);
                auto want = fpt_voter_control_bv(tag, in);
                ASSERT_EQ(got.decision, want.decision) << tag_name(tag) << " it " << it;
                if (got.decision == Decision::Yes) {
                    auto r = replay(tag, in, *got.witness);
                    EXPECT_TRUE(r.valid && r.success);
                }
            }
    }
}

TEST(FptAvDv, MatchesOracle) {
    std::mt19937_64 rng(72);
    for (int it = 0; it < 250; ++it) {
        int m = 1 + static_cast<int>(rng() % 3);
        auto in = voter_instance(m, static_cast<int>(rng() % 7), rng, true);
        for (bool cc : {true, false})
            for (Action a : {Action::AV, Action::DV}) {
                ControlTag tag{cc, a, false};
                auto got = fpt_av_dv(tag, in);
                auto want = control_oracle(tag, in);
                ASSERT_EQ(got.decision, want.decision) << tag_name(tag) << " it " << it;
                if (got.decision == Decision::Yes) {
                    auto r = replay(tag, in, *got.witness);
                    EXPECT_TRUE(r.valid && r.success);
                }
            }
    }
}

TEST(Fpt, SuccinctMatchesExpanded) {
    std::mt19937_64 rng(73);
    for (int it = 0; it < 60; ++it) {
        int m = 2 + static_cast<int>(rng() % 2);
        ControlInstance in;
        std::vector<VoterBlock> v;
        int blocks = 1 + static_cast<int>(rng() % 3);
        for (int b = 0; b < blocks; ++b) v.push_back({fixtures::random_order(m, rng), 1 + static_cast<int64_t>(rng() % 10)});
        in.election = Election(fixtures::names(m), v);
        in.pool = {{fixtures::random_order(m, rng), 1 + static_cast<int64_t>(rng() % 10)}};
        in.target = static_cast<int>(rng() % m);
        in.budget = static_cast<int64_t>(rng() % 6);
        in.alpha = fixtures::random_alpha(rng);
        auto ex = expanded(in);
        for (bool cc : {true, false}) {
            EXPECT_EQ(fpt_pv(TieRule::TP, cc, in).decision, fpt_pv(TieRule::TP, cc, ex).decision);
            EXPECT_EQ(fpt_pv(TieRule::TE, cc, in).decision, fpt_pv(TieRule::TE, cc, ex).decision);
            for (Action a : {Action::AV, Action::DV}) {
                ControlTag tag{cc, a, false};
                EXPECT_EQ(fpt_av_dv(tag, in).decision, fpt_av_dv(tag, ex).decision);
            }
        }
    }
}

TEST(Fpt, ZeroBudgetIsWinnerTest) {
    auto e = fixtures::odd_example();
    ControlInstance in;
    in.election = e;
    in.alpha = Alpha::half();
    for (int p = 0; p < 4; ++p) {
        in.target = p;
        bool wins = p == 2;
        EXPECT_EQ(fpt_av_dv({true, Action::DV, false}, in).decision, wins ? Decision::Yes : Decision::No);
        EXPECT_EQ(fpt_av_dv({true, Action::AV, false}, in).decision, wins ? Decision::Yes : Decision::No);
    }
}

TEST(Fpt, NoVoters) {
    ControlInstance in;
    in.election = Election(fixtures::names(3), {});
    in.target = 1;
    // Everyone ties, so everyone wins in the nonunique model.
    EXPECT_EQ(fpt_voter_control_bv({true, Action::DV, false}, in).decision, Decision::Yes);
    EXPECT_EQ(fpt_pv(TieRule::TP, true, in).decision, Decision::Yes);
    // With TE nobody advances from a tied subelection, so nobody wins.
    EXPECT_EQ(fpt_pv(TieRule::TE, true, in).decision, Decision::No);
}

TEST(Fpt, PvWithTwoVotersEnumeratesFourPartitions) {
    ControlInstance in;
    in.election = Election(fixtures::names(2), {{Preference::order({0, 1}), 1}, {Preference::order({1, 0}), 1}});
    in.target = 0;
    in.model = WinnerModel::Unique;
    auto v = fpt_voter_control_bv({true, Action::PV_TP, false}, in);
    EXPECT_EQ(v.nodes, 4);
    EXPECT_EQ(v.decision, Decision::No);
}

TEST(FptCandidates, MatchesOracleAndSuccinct) {
    std::mt19937_64 rng(74);
    for (int it = 0; it < 100; ++it) {
        auto in = fixtures::random_control(1 + static_cast<int>(rng() % 4), rng, true);
        for (bool cc : {true, false})
            for (Action a : {Action::AC, Action::ACu, Action::DC, Action::PC_TE, Action::PC_TP, Action::RPC_TE,
                             Action::RPC_TP}) {
                ControlTag tag{cc, a, false};
                auto inst = in;
                if (a != Action::AC && a != Action::ACu) inst.spoilers.clear();
                EXPECT_EQ(fpt_candidate_control(tag, inst).decision, control_oracle(tag, inst).decision);
            }
    }
    // Large multiplicities are only ever summed.
    ControlInstance big;
    big.election = Election(fixtures::names(3), {{Preference::order({0, 1, 2}), int64_t{1} << 20},
                                                 {Preference::order({2, 1, 0}), (int64_t{1} << 20) - 1}});
    big.target = 2;
    big.budget = 1;
    ControlInstance small = big;
    small.election = Election(fixtures::names(3), {{Preference::order({0, 1, 2}), 3}, {Preference::order({2, 1, 0}), 2}});
    for (Action a : {Action::DC, Action::PC_TP, Action::RPC_TE}) {
        ControlTag tag{true, a, false};
        EXPECT_EQ(fpt_candidate_control(tag, big).decision, fpt_candidate_control(tag, small).decision);
    }
    EXPECT_THROW(fpt_candidate_control({true, Action::DC, false}, [] {
        ControlInstance x;
        x.election = Election(fixtures::names(9), {});
        return x;
    }()), std::invalid_argument);
}

// ---------------------------------------------------------------- extended control

namespace {

// Brute force over unit-voter partitions with an arbitrary goal on the final election.
bool brute_pv_goal(const ControlInstance& in, TieRule rule, const CotGoal& g) {
    const auto& e = in.election;
    int64_t units = e.total_voters();
    auto all = all_candidates(e.m());
    for (uint32_t mask = 0; mask < (uint32_t{1} << units); ++mask) {
        std::vector<int64_t> c(e.voters().size(), 0);
        int bit = 0;
        for (size_t b = 0; b < c.size(); ++b)
            for (int64_t u = 0; u < e.voters()[b].mult; ++u, ++bit)
                if ((mask >> bit) & 1) ++c[b];
        Tally t1 = first_part_tally(e, c);
        Tally t2 = complement_tally(e.tally(), t1);
        auto fin = sorted_union(survivors(t1, in.alpha, all, rule), survivors(t2, in.alpha, all, rule));
        if (g.test(final_view(e.tally(), in.alpha, fin))) return true;
    }
    return false;
}

bool brute_dv_goal(const ControlInstance& in, const CotGoal& g) {
    const auto& e = in.election;
    int64_t units = e.total_voters();
    for (uint32_t mask = 0; mask < (uint32_t{1} << units); ++mask) {
        if (std::popcount(mask) > in.budget) continue;
        std::vector<int64_t> c(e.voters().size(), 0);
        int bit = 0;
        for (size_t b = 0; b < c.size(); ++b)
            for (int64_t u = 0; u < e.voters()[b].mult; ++u, ++bit)
                if ((mask >> bit) & 1) ++c[b];
        Tally t = complement_tally(e.tally(), first_part_tally(e, c));
        if (g.test(final_view(t, in.alpha, all_candidates(e.m())))) return true;
    }
    return false;
}

}  // namespace

TEST(Extended, PWinsIsFptPv) {
    std::mt19937_64 rng(75);
    for (int it = 0; it < 60; ++it) {
        auto in = voter_instance(1 + static_cast<int>(rng() % 3), static_cast<int>(rng() % 6), rng, false);
        auto g = goals::p_wins(in.target, true, in.model);
        EXPECT_EQ(extended_control(g, {true, Action::PV_TP, false}, in).decision, fpt_pv(TieRule::TP, true, in).decision);
    }
}

TEST(Extended, AllDistinctOnTiedPair) {
    ControlInstance in;
    in.election = Election(fixtures::names(2), {{Preference::order({0, 1}), 1}, {Preference::order({1, 0}), 1}});
    in.budget = 0;
    EXPECT_EQ(extended_control(goals::all_distinct(), {true, Action::DV, false}, in).decision, Decision::No);
    in.budget = 1;
    EXPECT_EQ(extended_control(goals::all_distinct(), {true, Action::DV, false}, in).decision, Decision::Yes);
}

TEST(Extended, GoalsMatchBruteForce) {
    std::mt19937_64 rng(76);
    for (int it = 0; it < 120; ++it) {
        auto in = voter_instance(3, static_cast<int>(rng() % 7), rng, false);
        std::vector<CotGoal> gs = {goals::exactly_cowinners(2), goals::all_distinct(),
                                   goals::lexicographic_order(in.election.names()), goals::weak_order({0, 1, 1}),
                                   goals::exactly_cowinners(3)};
        for (const auto& g : gs) {
            for (Action a : {Action::PV_TE, Action::PV_TP}) {
                bool want = brute_pv_goal(in, rule_of(a), g);
                EXPECT_EQ(extended_control(g, {true, a, false}, in).decision == Decision::Yes, want) << g.name;
            }
            EXPECT_EQ(extended_control(g, {true, Action::DV, false}, in).decision == Decision::Yes, brute_dv_goal(in, g))
                << g.name;
        }
    }
}

TEST(Extended, CandidateControlGoals) {
    // Deleting one candidate from a 3-cycle leaves a decisive pair: distinct scores.
    ControlInstance in;
    in.election = Election({"a", "b", "c"}, {{Preference::order({0, 1, 2}), 1},
                                            {Preference::order({1, 2, 0}), 1},
                                            {Preference::order({2, 0, 1}), 1}});
    in.budget = 0;
    EXPECT_EQ(extended_control(goals::all_distinct(), {true, Action::DC, false}, in).decision, Decision::No);
    in.budget = 1;
    auto v = extended_control(goals::all_distinct(), {true, Action::DC, false}, in);
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_EQ(v.witness->candidates.size(), 1u);
}
