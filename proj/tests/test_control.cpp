#include <gtest/gtest.h>

#include "copeland/control.hpp"
#include "copeland/oracle.hpp"
#include "fixtures.hpp"

using namespace copeland;

TEST(Tags, ParseAndName) {
    for (bool cc : {true, false})
        for (Action a : all_actions()) {
            ControlTag t{cc, a, false};
            EXPECT_EQ(parse_tag(tag_name(t)), t);
        }
    auto c = parse_tag("CONDORCET-CCPV");
    EXPECT_TRUE(c.condorcet);
    EXPECT_EQ(c.action, Action::PV_TP);
    EXPECT_TRUE(parse_tag("CONDORCET-CCDV").condorcet);
    EXPECT_THROW(parse_tag("CONDORCET-DCDV"), std::invalid_argument);
    EXPECT_THROW(parse_tag("CONDORCET-CCAC"), std::invalid_argument);
    EXPECT_THROW(parse_tag("XXAC"), std::invalid_argument);
    EXPECT_THROW(parse_tag("CCPV"), std::invalid_argument);
}

TEST(Replay, RejectsInvalidActions) {
    ControlInstance in;
    in.election = fixtures::odd_example();
    in.target = 0;
    in.spoilers = {3};
    in.budget = 1;
    using K = ControlAction::Kind;
    EXPECT_FALSE(replay(parse_tag("CCDC"), in, {K::DeleteCandidates, {0}, {}}).valid);
    EXPECT_FALSE(replay(parse_tag("CCDC"), in, {K::DeleteCandidates, {1, 2}, {}}).valid);
    EXPECT_FALSE(replay(parse_tag("CCDC"), in, {K::AddCandidates, {1}, {}}).valid);
    EXPECT_FALSE(replay(parse_tag("CCAC"), in, {K::AddCandidates, {1}, {}}).valid);
    EXPECT_FALSE(replay(parse_tag("CCDV"), in, {K::DeleteVoters, {}, {1, 1, 0}}).valid);
    EXPECT_FALSE(replay(parse_tag("CCDV"), in, {K::DeleteVoters, {}, {2, 0, 0}}).valid);
    EXPECT_TRUE(replay(parse_tag("CCDC"), in, {K::DeleteCandidates, {2}, {}}).success);
}

TEST(Replay, OddExampleActions) {
    ControlInstance in;
    in.election = fixtures::odd_example();
    in.target = 0;
    in.budget = 1;
    using K = ControlAction::Kind;
    // Deleting c2 leaves c0 beating c1 and c3.
    auto r = replay(parse_tag("CCDC"), in, {K::DeleteCandidates, {2}, {}});
    EXPECT_TRUE(r.valid && r.success);
    EXPECT_EQ(r.winners, std::vector<int>{0});
    // Deleting voter 3 (c2 c0 c3 c1) gives a 2-voter profile where c0 ties c2.
    auto d = replay(parse_tag("CCDV"), in, {K::DeleteVoters, {}, {0, 0, 1}});
    EXPECT_TRUE(d.valid);
    EXPECT_TRUE(d.success);
    in.model = WinnerModel::Unique;
    EXPECT_TRUE(replay(parse_tag("DCDC"), in, {K::DeleteCandidates, {}, {}}).success);
}

TEST(Replay, CondorcetPartitionNeedsWinnersOnBothSides) {
    // A Condorcet cycle a>b>c>a realized by three voters.
    ControlInstance in;
    in.election = Election({"a", "b", "c"}, {{Preference::order({0, 1, 2}), 1},
                                            {Preference::order({1, 2, 0}), 1},
                                            {Preference::order({2, 0, 1}), 1}});
    in.target = 0;
    using K = ControlAction::Kind;
    auto tag = parse_tag("CONDORCET-CCPV");
    // First part: the whole profile (cycle) is not admissible.
    EXPECT_FALSE(replay(tag, in, {K::PartitionVoters, {}, {1, 1, 1}}).valid);
    // First part {a>b>c}: a. Second part {b>c>a, c>a>b}: c beats a and ties... c vs b is 1:1, no winner.
    EXPECT_FALSE(replay(tag, in, {K::PartitionVoters, {}, {1, 0, 0}}).valid);
    // Empty first part: the whole cycle is the second part.
    EXPECT_FALSE(replay(tag, in, {K::PartitionVoters, {}, {0, 0, 0}}).valid);
}

// ---------------------------------------------------------------- polynomial vs exhaustive

namespace {

ControlInstance without_spoilers(ControlInstance in) {
    in.spoilers.clear();
    return in;
}

void expect_valid_witness(const ControlTag& tag, const ControlInstance& in, const Verdict& v) {
    if (v.decision != Decision::Yes) return;
    ASSERT_TRUE(v.witness);
    auto r = replay(tag, in, *v.witness);
    EXPECT_TRUE(r.valid) << r.error;
    EXPECT_TRUE(r.success) << tag_name(tag);
}

}  // namespace

TEST(Vulnerable, DcacMatchesOracle) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 250; ++it) {
        auto in = fixtures::random_control(2 + static_cast<int>(rng() % 5), rng, true);
        for (auto tag : {parse_tag("DCAC"), parse_tag("DCACu")}) {
            int64_t k = tag.action == Action::AC ? in.budget : static_cast<int64_t>(in.spoilers.size());
            auto got = dcac_greedy(in, k);
            auto want = control_oracle(tag, in);
            ASSERT_EQ(got.decision, want.decision) << tag_name(tag) << " it " << it;
            expect_valid_witness(tag, in, got);
        }
    }
}

TEST(Vulnerable, DcdcMatchesOracle) {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 250; ++it) {
        auto in = without_spoilers(fixtures::random_control(2 + static_cast<int>(rng() % 5), rng, false));
        auto tag = parse_tag("DCDC");
        auto got = dcdc_greedy(in, in.budget);
        auto want = control_oracle(tag, in);
        ASSERT_EQ(got.decision, want.decision) << "it " << it;
        expect_valid_witness(tag, in, got);
    }
}

TEST(Vulnerable, DcPartitionMatchesOracle) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 150; ++it) {
        auto in = fixtures::random_control(2 + static_cast<int>(rng() % 5), rng, false);
        for (Action a : {Action::PC_TE, Action::PC_TP, Action::RPC_TE, Action::RPC_TP}) {
            ControlTag tag{false, a, false};
            auto got = dc_partition(in, a);
            auto want = control_oracle(tag, in);
            ASSERT_EQ(got.decision, want.decision) << tag_name(tag) << " it " << it;
            expect_valid_witness(tag, in, got);
        }
    }
}

TEST(Vulnerable, CcacuMatchesOracle) {
    std::mt19937_64 rng(10);
    int supported = 0;
    for (int it = 0; it < 400; ++it) {
        auto in = fixtures::random_control(2 + static_cast<int>(rng() % 5), rng, true);
        auto tag = parse_tag("CCACu");
        auto got = ccacu_greedy(in);
        if (!in.alpha.is_zero() && !in.alpha.is_one()) {
            EXPECT_EQ(got.decision, Decision::Unsupported);
            continue;
        }
        ++supported;
        auto want = control_oracle(tag, in);
        ASSERT_EQ(got.decision, want.decision) << "it " << it;
        expect_valid_witness(tag, in, got);
    }
    EXPECT_GT(supported, 100);
}

TEST(Vulnerable, CcacuFixedPointIsOrderIndependent) {
    // Removing offenders one at a time, in any order, reaches the same set as removing
    // all offenders of a round at once.
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        auto in = fixtures::random_control(3 + static_cast<int>(rng() % 4), rng, true);
        in.alpha = rng() % 2 ? Alpha::zero() : Alpha::one();
        const Tally& t = in.election.tally();
        auto C = in.registered();
        std::vector<int> start;
        for (int d : in.spoilers)
            if (contest_points(t(in.target, d), in.alpha) == in.alpha.den) start.push_back(d);
        auto offenders = [&](const std::vector<int>& D) {
            std::vector<int> sub = C;
            sub.insert(sub.end(), D.begin(), D.end());
            auto s = scores_within(t, in.alpha, sub);
            std::vector<int> bad;
            int pi = static_cast<int>(std::find(sub.begin(), sub.end(), in.target) - sub.begin());
            for (size_t i = C.size(); i < sub.size(); ++i) {
                bool b = in.model == WinnerModel::Unique ? s[pi] <= s[i] : s[pi] < s[i];
                if (b) bad.push_back(sub[i]);
            }
            return bad;
        };
        std::vector<std::vector<int>> finals;
        for (int order = 0; order < 4; ++order) {
            std::vector<int> D = start;
            std::mt19937_64 r2(order);
            while (true) {
                auto bad = offenders(D);
                if (bad.empty()) break;
                int x = bad[r2() % bad.size()];
                D.erase(std::find(D.begin(), D.end(), x));
            }
            std::sort(D.begin(), D.end());
            finals.push_back(D);
        }
        for (const auto& f : finals) EXPECT_EQ(f, finals[0]);
        auto v = ccacu_greedy(in);
        if (v.decision == Decision::Yes) EXPECT_EQ(v.witness->candidates, finals[0]);
    }
}

TEST(Vulnerable, TrivialCases) {
    ControlInstance in;
    in.election = fixtures::odd_example();
    in.target = 2;  // c2 is the Condorcet winner
    in.alpha = Alpha::one();
    // No spoilers: ccacu is the plain winner test.
    auto v = ccacu_greedy(in);
    EXPECT_EQ(v.decision, Decision::Yes);
    EXPECT_TRUE(v.witness->candidates.empty());
    in.target = 1;
    EXPECT_EQ(ccacu_greedy(in).decision, Decision::No);
    // c2 beats everyone: no partition dethrones it in the unique model with TE.
    in.target = 2;
    in.model = WinnerModel::Unique;
    EXPECT_EQ(dc_partition(in, Action::PC_TE).decision, Decision::No);
    EXPECT_EQ(dcdc_greedy(in, 3).decision, Decision::No);
}
