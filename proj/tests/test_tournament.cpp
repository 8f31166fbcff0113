#include <gtest/gtest.h>

#include "copeland/tournament.hpp"
#include "fixtures.hpp"

using namespace copeland;

TEST(McGarvey, SingleEdge) {
    NamedCot t{{"a", "b", "c"}, Cot(3)};
    t.cot.set_win(0, 1);
    auto e = mcgarvey(t);
    EXPECT_EQ(e.total_voters(), 2);
    EXPECT_EQ(e.vs(0, 1), 2);
    EXPECT_EQ(e.vs(0, 2), 0);
    EXPECT_EQ(e.vs(1, 2), 0);
}

TEST(McGarvey, AllTies) {
    auto e = mcgarvey({fixtures::names(4), Cot(4)});
    EXPECT_EQ(e.total_voters(), 0);
    for (auto v : e.tally().vs) EXPECT_EQ(v, 0);
}

TEST(McGarvey, RoundTrip) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 300; ++it) {
        int m = 1 + static_cast<int>(rng() % 6);
        Cot c = fixtures::random_cot(m, rng);
        auto e = mcgarvey({fixtures::names(m), c});
        EXPECT_EQ(outcome_table(e), c);
        int decisive = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) decisive += c.sign(i, j) != 0;
        EXPECT_EQ(e.total_voters(), 2 * decisive);
        // The expanded (plain order) voters give the same table.
        std::vector<VoterBlock> plain;
        for (const auto& b : e.voters()) plain.push_back({Preference::order(b.pref.ranking()), b.mult});
        EXPECT_EQ(outcome_table(Election(e.names(), plain)), c);
    }
}

TEST(Pad, SmallCases) {
    auto p1 = pad_election(1);
    EXPECT_EQ(p1.m(), 3);
    EXPECT_GT(p1.vs(0, 1), 0);
    EXPECT_GT(p1.vs(1, 2), 0);
    EXPECT_GT(p1.vs(2, 0), 0);
    for (int n = 1; n <= 15; ++n) {
        auto e = pad_election(n);
        ASSERT_EQ(e.m(), 2 * n + 1);
        for (auto a : {Alpha::zero(), Alpha::half(), Alpha::one()})
            for (auto s : scores(e, a)) EXPECT_EQ(s, n * a.den);
    }
    EXPECT_THROW(pad_election(0), std::invalid_argument);
}

TEST(Targeted, ScoresFollowFormula) {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 40; ++it) {
        int np = 1 + static_cast<int>(rng() % 4);
        int n = np + static_cast<int>(rng() % 3);
        auto core = fixtures::random_election(np, static_cast<int>(rng() % 5), rng);
        std::vector<int> k(np);
        for (auto& x : k) x = static_cast<int>(rng() % (n + 1));
        auto e = targeted_election(core, n, k);
        ASSERT_EQ(e.m(), np + 2 * n * n);
        for (auto a : {Alpha::zero(), Alpha(1, 3), Alpha::one()}) {
            auto s = scores(e, a);
            for (int i = 0; i < np; ++i) {
                int ties = 0;
                for (int j = 0; j < np; ++j) ties += (j != i && core.vs(i, j) == 0);
                EXPECT_EQ(s[i], a.den * (2 * n * n - k[i]) + a.num * ties);
            }
            for (int d = np; d < e.m(); ++d) EXPECT_LE(s[d], a.den * (n * n + 1));
        }
        // No ties involve padding, and the core keeps its vs values.
        for (int i = 0; i < e.m(); ++i)
            for (int j = np; j < e.m(); ++j)
                if (i != j) EXPECT_NE(e.vs(i, j), 0);
        for (int i = 0; i < np; ++i)
            for (int j = 0; j < np; ++j) EXPECT_EQ(e.vs(i, j), core.vs(i, j));
    }
}

TEST(Targeted, SmallestCase) {
    Election one({"x"}, {});
    auto e = targeted_election(one, 1, {0});
    EXPECT_EQ(copeland_score(e, Alpha::half(), 0), 2 * Alpha::half().den);
}

TEST(Combine, CrossEdgesAndRoundTrip) {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        int m1 = 1 + static_cast<int>(rng() % 3), m2 = static_cast<int>(rng() % 3);
        auto e1 = mcgarvey({fixtures::names(m1, "f"), fixtures::random_cot(m1, rng)});
        auto e2 = mcgarvey({fixtures::names(m2, "h"), fixtures::random_cot(m2, rng)});
        std::vector<std::vector<Cross>> cross(m1, std::vector<Cross>(m2));
        for (auto& r : cross)
            for (auto& x : r) x = static_cast<Cross>(rng() % 3);
        auto e = combine(e1, e2, cross);
        for (int i = 0; i < m1; ++i)
            for (int j = 0; j < m1; ++j) EXPECT_EQ(outcome_table(e).sign(i, j), outcome_table(e1).sign(i, j));
        for (int i = 0; i < m2; ++i)
            for (int j = 0; j < m2; ++j)
                EXPECT_EQ(outcome_table(e).sign(m1 + i, m1 + j), outcome_table(e2).sign(i, j));
        for (int i = 0; i < m1; ++i)
            for (int j = 0; j < m2; ++j) {
                int want = cross[i][j] == Cross::FirstWins ? 1 : cross[i][j] == Cross::SecondWins ? -1 : 0;
                EXPECT_EQ(outcome_table(e).sign(i, m1 + j), want);
            }
    }
    auto x = mcgarvey({{"a", "b"}, Cot(2)});
    EXPECT_THROW(combine(x, x, {{Cross::Tie, Cross::Tie}, {Cross::Tie, Cross::Tie}}), std::invalid_argument);
}

TEST(TwoVoter, RoundTrip) {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 300; ++it) {
        int m = 1 + static_cast<int>(rng() % 6);
        Cot c = fixtures::random_cot(m, rng);
        auto e = two_voter_realization({fixtures::names(m), c});
        EXPECT_EQ(e.total_voters(), 2);
        EXPECT_EQ(outcome_table(e), c);
    }
    auto ties = two_voter_realization({fixtures::names(3), Cot(3)});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) EXPECT_NE(ties.voters()[0].pref.prefers(i, j), ties.voters()[1].pref.prefers(i, j));
    Cot dec(3);
    dec.set_win(0, 1);
    dec.set_win(1, 2);
    dec.set_win(2, 0);
    auto d = two_voter_realization({fixtures::names(3), dec});
    EXPECT_TRUE(d.voters()[0].pref == d.voters()[1].pref);
}

TEST(RealizeVs, ArbitraryTargets) {
    Tally t(3);
    auto set = [&](int a, int b, int64_t v) {
        t.vs[a * 3 + b] = v;
        t.vs[b * 3 + a] = -v;
    };
    set(0, 1, 5);
    set(0, 2, -3);
    set(1, 2, 1);
    auto e = realize_vs({"a", "b", "c"}, t);
    EXPECT_EQ(e.tally(), t);
    EXPECT_TRUE(e.rational());
    set(1, 2, 2);
    EXPECT_THROW(realize_vs({"a", "b", "c"}, t), std::invalid_argument);
}
