#include <gtest/gtest.h>

#include <random>

#include "copeland/flow.hpp"

using namespace copeland;

TEST(Flow, SingleEdge) {
    FlowNetwork n(2, 0, 1);
    n.add_edge(0, 1, 5, 0);
    auto f = solve_min_cost(n, 3);
    ASSERT_TRUE(f);
    EXPECT_EQ(flow_value(n, *f), 3);
    EXPECT_EQ(flow_cost(n, *f), 0);
    EXPECT_FALSE(solve_min_cost(n, 6));
}

TEST(Flow, TwoPaths) {
    FlowNetwork n(4, 0, 3);
    n.add_edge(0, 1, 1, 2);
    n.add_edge(1, 3, 1, 0);
    n.add_edge(0, 2, 1, 7);
    n.add_edge(2, 3, 1, 0);
    auto f = solve_min_cost(n, 2);
    ASSERT_TRUE(f);
    EXPECT_EQ(flow_cost(n, *f), 9);
    EXPECT_EQ(flow_cost(n, *solve_min_cost(n, 1)), 2);
}

TEST(Flow, ZeroFlow) {
    FlowNetwork n(3, 0, 2);
    n.add_edge(0, 1, 2, 3);
    Flow z{std::vector<int64_t>(1, 0)};
    EXPECT_EQ(flow_value(n, z), 0);
    EXPECT_EQ(flow_cost(n, z), 0);
    auto f = solve_min_cost(n, 0);
    ASSERT_TRUE(f);
    EXPECT_EQ(flow_cost(n, *f), 0);
}

TEST(Flow, RejectsBadNetworks) {
    FlowNetwork n(3, 0, 2);
    EXPECT_THROW(n.add_edge(0, 1, 1, -1), std::invalid_argument);
    EXPECT_THROW(n.add_edge(0, 1, -1, 0), std::invalid_argument);
    EXPECT_THROW(n.add_edge(1, 1, 1, 0), std::invalid_argument);
    n.add_edge(0, 1, 1, 0);
    EXPECT_THROW(n.add_edge(1, 0, 1, 0), std::invalid_argument);
}

// Exhaustive search over all integer edge flows.
static std::optional<int64_t> brute_min_cost(const FlowNetwork& n, int64_t F) {
    const auto& E = n.edges();
    std::vector<int64_t> f(E.size(), 0);
    std::optional<int64_t> best;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == E.size()) {
            Flow fl{f};
            if (flow_valid(n, fl) && flow_value(n, fl) == F) {
                int64_t c = flow_cost(n, fl);
                if (!best || c < *best) best = c;
            }
            return;
        }
        for (int64_t x = 0; x <= E[i].cap; ++x) {
            f[i] = x;
            rec(i + 1);
        }
        f[i] = 0;
    };
    rec(0);
    return best;
}

TEST(Flow, MatchesExhaustiveOnSmallNetworks) {
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        int nodes = 3 + static_cast<int>(rng() % 4);
        FlowNetwork n(nodes, 0, nodes - 1);
        int edges = 0;
        for (int u = 0; u < nodes && edges < 7; ++u)
            for (int v = 0; v < nodes && edges < 7; ++v) {
                if (u == v || rng() % 3 != 0) continue;
                try {
                    n.add_edge(u, v, static_cast<int64_t>(rng() % 4), static_cast<int64_t>(rng() % 5));
                    ++edges;
                } catch (const std::invalid_argument&) {
                }
            }
        int64_t F = static_cast<int64_t>(rng() % 4);
        auto got = solve_min_cost(n, F);
        auto want = brute_min_cost(n, F);
        ASSERT_EQ(got.has_value(), want.has_value());
        if (got) {
            EXPECT_TRUE(flow_valid(n, *got));
            EXPECT_EQ(flow_value(n, *got), F);
            EXPECT_EQ(flow_cost(n, *got), *want);
            ++checked;
        }
    }
    EXPECT_GT(checked, 100);
}
