#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "copeland/control.hpp"
#include "copeland/election.hpp"
#include "copeland/problems.hpp"
#include "copeland/tournament.hpp"

namespace fixtures {

using namespace copeland;

inline Election odd_example() {
    std::vector<std::string> n{"c0", "c1", "c2", "c3"};
    return Election(n, {{Preference::order({0, 1, 2, 3}), 1},
                        {Preference::order({3, 2, 1, 0}), 1},
                        {Preference::order({2, 0, 3, 1}), 1}});
}

inline Election even_example() {
    std::vector<std::string> n{"c0", "c1", "c2", "c3"};
    return Election(n, {{Preference::order({0, 1, 2, 3}), 1},
                        {Preference::order({3, 2, 1, 0}), 1},
                        {Preference::order({2, 0, 3, 1}), 1},
                        {Preference::order({2, 3, 0, 1}), 1}});
}

inline std::vector<std::string> names(int m, const std::string& prefix = "c") {
    std::vector<std::string> v;
    for (int i = 0; i < m; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

inline Preference random_order(int m, std::mt19937_64& rng) {
    std::vector<int> o(m);
    for (int i = 0; i < m; ++i) o[i] = i;
    std::shuffle(o.begin(), o.end(), rng);
    return Preference::order(o);
}

inline Preference random_table(int m, std::mt19937_64& rng) {
    std::vector<uint8_t> b(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (rng() & 1)
                b[i * m + j] = 1;
            else
                b[j * m + i] = 1;
        }
    return Preference::table(m, b);
}

// n unit voters; each irrational with probability `irr`.
inline Election random_election(int m, int n, std::mt19937_64& rng, double irr = 0.0) {
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<VoterBlock> v;
    for (int i = 0; i < n; ++i) v.push_back({u(rng) < irr ? random_table(m, rng) : random_order(m, rng), 1});
    return Election(names(m), v);
}

inline Cot random_cot(int m, std::mt19937_64& rng) {
    Cot c(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) c.set(i, j, static_cast<int>(rng() % 3) - 1);
    return c;
}

// Either a random profile or a McGarvey election of a random outcome table (many ties).
inline Election random_profile(int m, std::mt19937_64& rng) {
    if (rng() % 2) return mcgarvey({names(m), random_cot(m, rng)});
    return random_election(m, 1 + static_cast<int>(rng() % 5), rng, rng() % 4 == 0 ? 0.5 : 0.0);
}

inline Alpha random_alpha(std::mt19937_64& rng) {
    static const Alpha pool[] = {Alpha::zero(), Alpha(1, 3), Alpha::half(), Alpha::one()};
    return pool[rng() % 4];
}

// Small control instance over m candidates; spoilers (when wanted) exclude the target.
inline ControlInstance random_control(int m, std::mt19937_64& rng, bool with_spoilers, bool with_pool = false) {
    ControlInstance in;
    in.election = random_profile(m, rng);
    in.target = static_cast<int>(rng() % m);
    if (with_spoilers)
        for (int c = 0; c < m; ++c)
            if (c != in.target && rng() % 2) in.spoilers.push_back(c);
    if (with_pool) {
        int n = static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) in.pool.push_back({random_order(m, rng), 1 + static_cast<int64_t>(rng() % 2)});
    }
    in.budget = static_cast<int64_t>(rng() % 3);
    in.alpha = random_alpha(rng);
    in.model = rng() % 2 ? WinnerModel::Unique : WinnerModel::Nonunique;
    return in;
}

inline std::array<int, 3> sorted3(int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

// n sets over 3k elements; with `plant` k of them (shuffled in) form a cover.
inline X3CInstance random_x3c(int k, int n, std::mt19937_64& rng, bool plant) {
    X3CInstance x;
    x.k = k;
    for (int i = 0; i < 3 * k; ++i) x.names.push_back("x" + std::to_string(i + 1));
    std::vector<int> perm(3 * k);
    std::iota(perm.begin(), perm.end(), 0);
    if (plant) {
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int j = 0; j < k && static_cast<int>(x.S.size()) < n; ++j)
            x.S.push_back(sorted3(perm[3 * j], perm[3 * j + 1], perm[3 * j + 2]));
    }
    while (static_cast<int>(x.S.size()) < n) {
        std::shuffle(perm.begin(), perm.end(), rng);
        x.S.push_back(sorted3(perm[0], perm[1], perm[2]));
    }
    std::shuffle(x.S.begin(), x.S.end(), rng);
    return x;
}

inline VCInstance random_vc(int n, int m, int k, std::mt19937_64& rng) {
    VCInstance g;
    g.k = k;
    for (int i = 0; i < n; ++i) g.names.push_back("w" + std::to_string(i + 1));
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) all.push_back({a, b});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<size_t>(all.size(), m));
    g.edges = all;
    return g;
}

}  // namespace fixtures
