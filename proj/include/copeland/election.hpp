#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "copeland/alpha.hpp"

namespace copeland {

enum class WinnerModel { Nonunique, Unique };
enum class TieRule { TE, TP };

inline bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

// One voter's preferences. Linear orders, full pairwise tables, and the two
// McGarvey voter shapes (kept symbolic so large constructions stay cheap).
class Preference {
public:
    enum class Kind : uint8_t { Order, Table, PairHead, PairTail };

    Preference() = default;

    static Preference order(std::vector<int> ord) {
        int m = static_cast<int>(ord.size());
        Preference p;
        p.kind_ = Kind::Order;
        p.m_ = m;
        p.rank_.assign(m, -1);
        for (int pos = 0; pos < m; ++pos) {
            int c = ord[pos];
            if (c < 0 || c >= m || p.rank_[c] != -1) throw std::invalid_argument("order is not a permutation");
            p.rank_[c] = pos;
        }
        return p;
    }

    // beats[i*m+j] != 0 iff i is preferred to j. Exactly one direction per pair.
    static Preference table(int m, std::vector<uint8_t> beats) {
        if (m < 0 || beats.size() != static_cast<size_t>(m) * m) throw std::invalid_argument("table size mismatch");
        for (int i = 0; i < m; ++i) {
            if (beats[i * m + i]) throw std::invalid_argument("table prefers a candidate to itself");
            for (int j = i + 1; j < m; ++j)
                if ((beats[i * m + j] != 0) == (beats[j * m + i] != 0))
                    throw std::invalid_argument("table must decide every pair exactly once");
        }
        for (auto& b : beats) b = b ? 1 : 0;
        Preference p;
        p.kind_ = Kind::Table;
        p.m_ = m;
        p.beats_ = std::move(beats);
        return p;
    }

    // a > b > rest (ascending id)
    static Preference pair_head(int m, int a, int b) { return pair(Kind::PairHead, m, a, b); }
    // reverse(rest) > a > b
    static Preference pair_tail(int m, int a, int b) { return pair(Kind::PairTail, m, a, b); }

    Kind kind() const { return kind_; }
    bool rational() const { return kind_ != Kind::Table; }
    int size() const { return m_; }
    int gadget_a() const { return a_; }
    int gadget_b() const { return b_; }

    int rank(int c) const {
        switch (kind_) {
            case Kind::Order: return rank_[c];
            case Kind::PairHead:
                if (c == a_) return 0;
                if (c == b_) return 1;
                return 2 + rest_index(c);
            case Kind::PairTail:
                if (c == a_) return m_ - 2;
                if (c == b_) return m_ - 1;
                return (m_ - 3) - rest_index(c);
            case Kind::Table: break;
        }
        throw std::logic_error("rank() on a table preference");
    }

    bool prefers(int i, int j) const {
        if (kind_ == Kind::Table) return beats_[i * m_ + j] != 0;
        return rank(i) < rank(j);
    }

    std::vector<int> ranking() const {
        if (kind_ == Kind::Table) throw std::logic_error("ranking() on a table preference");
        std::vector<int> ord(m_);
        for (int c = 0; c < m_; ++c) ord[rank(c)] = c;
        return ord;
    }

    Preference as_table() const {
        std::vector<uint8_t> b(static_cast<size_t>(m_) * m_, 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                if (i != j && prefers(i, j)) b[i * m_ + j] = 1;
        return table(m_, std::move(b));
    }

    // Preference over keep[0..], keep[x] being the old id of new candidate x.
    Preference restricted(const std::vector<int>& keep) const {
        int k = static_cast<int>(keep.size());
        if (kind_ == Kind::PairHead || kind_ == Kind::PairTail) {
            bool sorted = std::is_sorted(keep.begin(), keep.end());
            int na = -1, nb = -1;
            for (int x = 0; x < k; ++x) {
                if (keep[x] == a_) na = x;
                if (keep[x] == b_) nb = x;
            }
            if (sorted && na >= 0 && nb >= 0) return pair(kind_, k, na, nb);
        }
        if (kind_ == Kind::Table) {
            std::vector<uint8_t> b(static_cast<size_t>(k) * k, 0);
            for (int x = 0; x < k; ++x)
                for (int y = 0; y < k; ++y)
                    if (x != y && prefers(keep[x], keep[y])) b[x * k + y] = 1;
            return table(k, std::move(b));
        }
        std::vector<int> ord(keep.size());
        for (int x = 0; x < k; ++x) ord[x] = x;
        std::sort(ord.begin(), ord.end(), [&](int x, int y) { return rank(keep[x]) < rank(keep[y]); });
        return order(std::move(ord));
    }

    // Flip the pairwise entry for {i,j}; the result is always a table.
    Preference flipped(int i, int j) const {
        Preference t = (kind_ == Kind::Table) ? *this : as_table();
        std::swap(t.beats_[i * m_ + j], t.beats_[j * m_ + i]);
        return t;
    }

    friend bool operator==(const Preference& x, const Preference& y) {
        if (x.m_ != y.m_) return false;
        for (int i = 0; i < x.m_; ++i)
            for (int j = i + 1; j < x.m_; ++j)
                if (x.prefers(i, j) != y.prefers(i, j)) return false;
        return true;
    }

private:
    static Preference pair(Kind k, int m, int a, int b) {
        if (m < 2 || a < 0 || b < 0 || a >= m || b >= m || a == b) throw std::invalid_argument("bad pair voter");
        Preference p;
        p.kind_ = k;
        p.m_ = m;
        p.a_ = a;
        p.b_ = b;
        return p;
    }
    int rest_index(int c) const { return c - (c > a_ ? 1 : 0) - (c > b_ ? 1 : 0); }

    Kind kind_ = Kind::Order;
    int m_ = 0;
    int a_ = -1, b_ = -1;
    std::vector<int> rank_;
    std::vector<uint8_t> beats_;
};

struct VoterBlock {
    Preference pref;
    int64_t mult = 1;
};

// Pairwise relative vote scores, row-major m x m.
struct Tally {
    int m = 0;
    std::vector<int64_t> vs;

    Tally() = default;
    explicit Tally(int m_) : m(m_), vs(static_cast<size_t>(m_) * m_, 0) {}

    int64_t operator()(int i, int j) const { return vs[static_cast<size_t>(i) * m + j]; }

    void add(const Preference& p, int64_t mult) {
        if (mult == 0) return;
        if (p.kind() == Preference::Kind::Table || p.kind() == Preference::Kind::Order) {
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) {
                    int64_t d = p.prefers(i, j) ? mult : -mult;
                    vs[i * m + j] += d;
                    vs[j * m + i] -= d;
                }
            return;
        }
        std::vector<int> ord = p.ranking();
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y) {
                vs[ord[x] * m + ord[y]] += mult;
                vs[ord[y] * m + ord[x]] -= mult;
            }
    }

    // A head/tail McGarvey pair on (a,b) contributes exactly +2 to vs(a,b); matched
    // pairs are folded in directly and only unmatched halves are expanded.
    void add_blocks(const std::vector<VoterBlock>& blocks, int sign = 1) {
        std::map<std::pair<int, int>, std::pair<int64_t, int64_t>> pairs;
        for (const auto& b : blocks) {
            auto k = b.pref.kind();
            if (k == Preference::Kind::PairHead)
                pairs[{b.pref.gadget_a(), b.pref.gadget_b()}].first += b.mult;
            else if (k == Preference::Kind::PairTail)
                pairs[{b.pref.gadget_a(), b.pref.gadget_b()}].second += b.mult;
            else
                add(b.pref, sign * b.mult);
        }
        for (const auto& [ab, ht] : pairs) {
            auto [a, b] = ab;
            int64_t both = std::min(ht.first, ht.second);
            vs[a * m + b] += sign * 2 * both;
            vs[b * m + a] -= sign * 2 * both;
            if (ht.first > both) add(Preference::pair_head(m, a, b), sign * (ht.first - both));
            if (ht.second > both) add(Preference::pair_tail(m, a, b), sign * (ht.second - both));
        }
    }

    Tally restricted(const std::vector<int>& keep) const {
        Tally t(static_cast<int>(keep.size()));
        for (int x = 0; x < t.m; ++x)
            for (int y = 0; y < t.m; ++y) t.vs[x * t.m + y] = (*this)(keep[x], keep[y]);
        return t;
    }

    friend bool operator==(const Tally&, const Tally&) = default;
};

class Election {
public:
    Election() = default;

    Election(std::vector<std::string> names, std::vector<VoterBlock> voters)
        : names_(std::move(names)), voters_(std::move(voters)) {
        validate();
        tally_ = Tally(m());
        tally_.add_blocks(voters_);
        for (const auto& b : voters_) total_ += b.mult;
    }

    int m() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int c) const { return names_.at(c); }
    const std::vector<VoterBlock>& voters() const { return voters_; }
    int64_t total_voters() const { return total_; }
    const Tally& tally() const { return tally_; }
    int64_t vs(int i, int j) const { return tally_(i, j); }

    bool rational() const {
        return std::all_of(voters_.begin(), voters_.end(), [](const VoterBlock& b) { return b.pref.rational(); });
    }

    int index_of(std::string_view n) const {
        for (int i = 0; i < m(); ++i)
            if (names_[i] == n) return i;
        return -1;
    }
    int id(std::string_view n) const {
        int i = index_of(n);
        if (i < 0) throw std::invalid_argument("unknown candidate: " + std::string(n));
        return i;
    }

    Election restrict_candidates(const std::vector<int>& keep) const {
        std::vector<std::string> nn;
        for (int c : keep) nn.push_back(names_.at(c));
        std::vector<VoterBlock> vv;
        vv.reserve(voters_.size());
        for (const auto& b : voters_) vv.push_back({b.pref.restricted(keep), b.mult});
        return Election(std::move(nn), std::move(vv));
    }

    Election with_voters(std::vector<VoterBlock> voters) const { return Election(names_, std::move(voters)); }

    // Keep counts[i] voters of block i.
    Election select_voters(const std::vector<int64_t>& counts) const {
        if (counts.size() != voters_.size()) throw std::invalid_argument("count vector size mismatch");
        std::vector<VoterBlock> vv;
        for (size_t i = 0; i < voters_.size(); ++i) {
            if (counts[i] < 0 || counts[i] > voters_[i].mult) throw std::invalid_argument("count out of range");
            if (counts[i] > 0) vv.push_back({voters_[i].pref, counts[i]});
        }
        return Election(names_, std::move(vv));
    }

    // Every block split into unit voters, in block order.
    Election expanded() const {
        std::vector<VoterBlock> vv;
        for (const auto& b : voters_)
            for (int64_t r = 0; r < b.mult; ++r) vv.push_back({b.pref, 1});
        return Election(names_, std::move(vv));
    }

private:
    void validate() const {
        std::unordered_map<std::string, int> seen;
        for (const auto& n : names_) {
            if (!valid_name(n)) throw std::invalid_argument("invalid candidate name: '" + n + "'");
            if (!seen.emplace(n, 0).second) throw std::invalid_argument("duplicate candidate name: " + n);
        }
        for (const auto& b : voters_) {
            if (b.mult < 1) throw std::invalid_argument("voter multiplicity must be positive");
            if (b.pref.size() != m()) throw std::invalid_argument("preference does not range over the candidate set");
        }
    }

    std::vector<std::string> names_;
    std::vector<VoterBlock> voters_;
    Tally tally_;
    int64_t total_ = 0;
};

inline std::vector<int> all_candidates(int m) {
    std::vector<int> v(m);
    for (int i = 0; i < m; ++i) v[i] = i;
    return v;
}

inline int64_t relative_vote_score(const Election& e, int i, int l) {
    if (i < 0 || l < 0 || i >= e.m() || l >= e.m()) throw std::out_of_range("unknown candidate id");
    return e.vs(i, l);
}

// Scaled points for one head-to-head contest with relative vote score v.
inline int64_t contest_points(int64_t v, const Alpha& a) { return v > 0 ? a.den : (v == 0 ? a.num : 0); }

// Scores of subset members (aligned with subset), computed inside the subset only.
inline std::vector<int64_t> scores_within(const Tally& t, const Alpha& a, std::span<const int> subset) {
    std::vector<int64_t> s(subset.size(), 0);
    for (size_t x = 0; x < subset.size(); ++x)
        for (size_t y = 0; y < subset.size(); ++y)
            if (x != y) s[x] += contest_points(t(subset[x], subset[y]), a);
    return s;
}

inline std::vector<int64_t> scores(const Tally& t, const Alpha& a) {
    auto all = all_candidates(t.m);
    return scores_within(t, a, all);
}
inline std::vector<int64_t> scores(const Election& e, const Alpha& a) { return scores(e.tally(), a); }

inline int64_t copeland_score(const Election& e, const Alpha& a, int c) {
    if (c < 0 || c >= e.m()) throw std::out_of_range("unknown candidate id");
    int64_t s = 0;
    for (int j = 0; j < e.m(); ++j)
        if (j != c) s += contest_points(e.vs(c, j), a);
    return s;
}

// Winners among subset (global ids, ascending subset order).
inline std::vector<int> winners_within(const Tally& t, const Alpha& a, std::span<const int> subset,
                                       WinnerModel model = WinnerModel::Nonunique) {
    std::vector<int> w;
    if (subset.empty()) return w;
    auto s = scores_within(t, a, subset);
    int64_t best = *std::max_element(s.begin(), s.end());
    for (size_t x = 0; x < subset.size(); ++x)
        if (s[x] == best) w.push_back(subset[x]);
    if (model == WinnerModel::Unique && w.size() != 1) w.clear();
    return w;
}

inline std::vector<int> winners(const Tally& t, const Alpha& a, WinnerModel model = WinnerModel::Nonunique) {
    auto all = all_candidates(t.m);
    return winners_within(t, a, all, model);
}

inline std::vector<int> winners(const Election& e, const Alpha& a, WinnerModel model = WinnerModel::Nonunique) {
    if (e.m() == 0) throw std::invalid_argument("winners of an empty candidate set");
    return winners(e.tally(), a, model);
}

inline std::optional<int> condorcet_winner_within(const Tally& t, std::span<const int> subset) {
    for (int c : subset) {
        bool all = true;
        for (int d : subset)
            if (d != c && t(c, d) <= 0) {
                all = false;
                break;
            }
        if (all) return c;
    }
    return std::nullopt;
}

inline std::optional<int> condorcet_winner(const Tally& t) {
    auto all = all_candidates(t.m);
    return condorcet_winner_within(t, all);
}
inline std::optional<int> condorcet_winner(const Election& e) { return condorcet_winner(e.tally()); }

// Did the final winner set W achieve the control goal for p?
inline bool goal_reached(bool constructive, WinnerModel model, const std::vector<int>& w, int p) {
    bool in = std::find(w.begin(), w.end(), p) != w.end();
    bool unique = in && w.size() == 1;
    if (constructive) return model == WinnerModel::Nonunique ? in : unique;
    return model == WinnerModel::Nonunique ? !in : !unique;
}

// Copeland outcome table: sign of vs for every pair (+1 first wins, -1 second wins, 0 tie).
class Cot {
public:
    enum class Outcome { IWins, LWins, Tie };

    Cot() = default;
    explicit Cot(int m) : m_(m), s_(static_cast<size_t>(m) * m, 0) {}

    static Cot from_tally(const Tally& t) {
        Cot c(t.m);
        for (int i = 0; i < t.m; ++i)
            for (int j = 0; j < t.m; ++j) c.s_[i * t.m + j] = t(i, j) > 0 ? 1 : (t(i, j) < 0 ? -1 : 0);
        return c;
    }

    int size() const { return m_; }
    int sign(int i, int j) const { return s_[static_cast<size_t>(i) * m_ + j]; }
    Outcome outcome(int i, int l) const {
        int s = sign(i, l);
        return s > 0 ? Outcome::IWins : (s < 0 ? Outcome::LWins : Outcome::Tie);
    }
    void set(int i, int j, int sgn) {
        if (i == j) throw std::invalid_argument("self pair in outcome table");
        sgn = sgn > 0 ? 1 : (sgn < 0 ? -1 : 0);
        s_[i * m_ + j] = static_cast<int8_t>(sgn);
        s_[j * m_ + i] = static_cast<int8_t>(-sgn);
    }
    void set_win(int winner, int loser) { set(winner, loser, 1); }
    void set_tie(int i, int j) { set(i, j, 0); }

    // Whole-point score inside the table, scaled by alpha.
    std::vector<int64_t> scores(const Alpha& a) const {
        std::vector<int64_t> s(m_, 0);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                if (i != j) s[i] += contest_points(sign(i, j), a);
        return s;
    }

    std::vector<int> winners(const Alpha& a, WinnerModel model = WinnerModel::Nonunique) const {
        Tally t(m_);
        for (size_t k = 0; k < s_.size(); ++k) t.vs[k] = s_[k];
        return copeland::winners(t, a, model);
    }

    Tally as_tally() const {
        Tally t(m_);
        for (size_t k = 0; k < s_.size(); ++k) t.vs[k] = s_[k];
        return t;
    }

    friend bool operator==(const Cot&, const Cot&) = default;

private:
    int m_ = 0;
    std::vector<int8_t> s_;
};

inline Cot outcome_table(const Election& e) { return Cot::from_tally(e.tally()); }

}  // namespace copeland
