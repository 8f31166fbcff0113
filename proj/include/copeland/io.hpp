#pragma once

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "copeland/election.hpp"

namespace copeland {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& msg) : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

namespace detail {

struct Line {
    int number;
    std::vector<std::string> tok;
};

inline std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ss(raw);
        Line l{n, {}};
        std::string t;
        while (ss >> t) l.tok.push_back(t);
        if (!l.tok.empty()) out.push_back(std::move(l));
    }
    return out;
}

inline int64_t parse_count(const std::string& s, int line) {
    if (s.empty() || s.size() > 18) throw ParseError(line, "bad multiplicity '" + s + "'");
    int64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw ParseError(line, "bad multiplicity '" + s + "'");
        v = v * 10 + (c - '0');
    }
    if (v < 1) throw ParseError(line, "multiplicity must be positive");
    return v;
}

inline int lookup(const std::vector<std::string>& names, const std::string& n, int line) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
    throw ParseError(line, "unknown candidate '" + n + "'");
}

}  // namespace detail

// Parse one voter line (ORDER/TABLE) against a fixed candidate list.
inline VoterBlock parse_voter_line(const std::vector<std::string>& tok, const std::vector<std::string>& names,
                                   int line) {
    int m = static_cast<int>(names.size());
    if (tok.size() < 3 || tok[2] != ":") throw ParseError(line, "expected '<KIND> <mult> : ...'");
    int64_t mult = detail::parse_count(tok[1], line);
    if (tok[0] == "ORDER") {
        if (static_cast<int>(tok.size()) - 3 != m) throw ParseError(line, "ORDER must list every candidate once");
        std::vector<int> ord;
        std::vector<char> seen(m, 0);
        for (size_t i = 3; i < tok.size(); ++i) {
            int c = detail::lookup(names, tok[i], line);
            if (seen[c]++) throw ParseError(line, "candidate repeated in ORDER");
            ord.push_back(c);
        }
        return {Preference::order(std::move(ord)), mult};
    }
    if (tok[0] == "TABLE") {
        std::vector<uint8_t> b(static_cast<size_t>(m) * m, 0);
        std::vector<char> pairseen(static_cast<size_t>(m) * m, 0);
        size_t need = static_cast<size_t>(m) * (m - 1) / 2;
        if (tok.size() - 3 != need) throw ParseError(line, "TABLE must give every pair exactly once");
        for (size_t i = 3; i < tok.size(); ++i) {
            auto gt = tok[i].find('>');
            if (gt == std::string::npos) throw ParseError(line, "table entry must look like a>b");
            int x = detail::lookup(names, tok[i].substr(0, gt), line);
            int y = detail::lookup(names, tok[i].substr(gt + 1), line);
            if (x == y) throw ParseError(line, "table entry compares a candidate with itself");
            int lo = std::min(x, y), hi = std::max(x, y);
            if (pairseen[lo * m + hi]++) throw ParseError(line, "pair repeated in TABLE");
            b[x * m + y] = 1;
        }
        return {Preference::table(m, std::move(b)), mult};
    }
    if (tok[0] == "HEAD" || tok[0] == "TAIL") {
        if (tok.size() != 5) throw ParseError(line, tok[0] + " needs exactly two candidates");
        int a = detail::lookup(names, tok[3], line), b = detail::lookup(names, tok[4], line);
        if (a == b || m < 2) throw ParseError(line, tok[0] + " needs two distinct candidates");
        return {tok[0] == "HEAD" ? Preference::pair_head(m, a, b) : Preference::pair_tail(m, a, b), mult};
    }
    throw ParseError(line, "unknown voter kind '" + tok[0] + "'");
}

inline std::vector<std::string> parse_candidates_line(const detail::Line& l) {
    std::vector<std::string> names(l.tok.begin() + 1, l.tok.end());
    for (size_t i = 0; i < names.size(); ++i) {
        if (!valid_name(names[i])) throw ParseError(l.number, "invalid candidate name '" + names[i] + "'");
        for (size_t j = 0; j < i; ++j)
            if (names[i] == names[j]) throw ParseError(l.number, "duplicate candidate '" + names[i] + "'");
    }
    return names;
}

inline Election parse_election(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "ELECTION" || lines[0].tok[1] != "v1")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'ELECTION v1'");
    std::vector<std::string> names;
    bool have_names = false;
    std::vector<VoterBlock> voters;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tok[0] == "CANDIDATES") {
            if (have_names) throw ParseError(l.number, "CANDIDATES given twice");
            names = parse_candidates_line(l);
            have_names = true;
        } else if (l.tok[0] == "ORDER" || l.tok[0] == "TABLE" || l.tok[0] == "HEAD" || l.tok[0] == "TAIL") {
            if (!have_names) throw ParseError(l.number, "voter line before CANDIDATES");
            voters.push_back(parse_voter_line(l.tok, names, l.number));
        } else {
            throw ParseError(l.number, "unknown keyword '" + l.tok[0] + "'");
        }
    }
    if (!have_names) throw ParseError(0, "missing CANDIDATES line");
    return Election(std::move(names), std::move(voters));
}

inline Election parse_election(const std::string& text) {
    std::istringstream ss(text);
    return parse_election(ss);
}

inline std::string format_voter(const VoterBlock& b, const std::vector<std::string>& names,
                                const std::string& kind_order = "ORDER") {
    std::string s;
    int m = static_cast<int>(names.size());
    if (b.pref.kind() == Preference::Kind::PairHead || b.pref.kind() == Preference::Kind::PairTail) {
        s = std::string(b.pref.kind() == Preference::Kind::PairHead ? "HEAD " : "TAIL ") + std::to_string(b.mult) +
            " : " + names[b.pref.gadget_a()] + " " + names[b.pref.gadget_b()];
    } else if (b.pref.rational()) {
        s = kind_order + " " + std::to_string(b.mult) + " :";
        for (int c : b.pref.ranking()) s += " " + names[c];
    } else {
        s = "TABLE " + std::to_string(b.mult) + " :";
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                s += " " + (b.pref.prefers(i, j) ? names[i] + ">" + names[j] : names[j] + ">" + names[i]);
    }
    return s;
}

inline std::string format_election(const Election& e) {
    std::string s = "ELECTION v1\nCANDIDATES";
    for (const auto& n : e.names()) s += " " + n;
    s += "\n";
    for (const auto& b : e.voters()) s += format_voter(b, e.names()) + "\n";
    return s;
}

// COT text: 'COT v1', optional 'CANDIDATES ...', then 'PAIR a b {a|b|tie}' for every pair.
struct NamedCot {
    std::vector<std::string> names;
    Cot cot;
};

inline NamedCot parse_cot(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "COT" || lines[0].tok[1] != "v1")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'COT v1'");
    std::vector<std::string> names;
    bool fixed = false;
    struct P {
        std::string a, b, w;
        int line;
    };
    std::vector<P> pairs;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tok[0] == "CANDIDATES") {
            if (fixed || !pairs.empty()) throw ParseError(l.number, "CANDIDATES must come first and once");
            names = parse_candidates_line(l);
            fixed = true;
        } else if (l.tok[0] == "PAIR") {
            if (l.tok.size() != 4) throw ParseError(l.number, "expected 'PAIR a b {a|b|tie}'");
            pairs.push_back({l.tok[1], l.tok[2], l.tok[3], l.number});
            if (!fixed)
                for (int k = 1; k <= 2; ++k) {
                    if (!valid_name(l.tok[k])) throw ParseError(l.number, "invalid candidate name");
                    if (std::find(names.begin(), names.end(), l.tok[k]) == names.end()) names.push_back(l.tok[k]);
                }
        } else {
            throw ParseError(l.number, "unknown keyword '" + l.tok[0] + "'");
        }
    }
    int m = static_cast<int>(names.size());
    Cot c(m);
    std::vector<char> seen(static_cast<size_t>(m) * m, 0);
    for (const auto& p : pairs) {
        int a = detail::lookup(names, p.a, p.line), b = detail::lookup(names, p.b, p.line);
        if (a == b) throw ParseError(p.line, "PAIR of a candidate with itself");
        int lo = std::min(a, b), hi = std::max(a, b);
        if (seen[lo * m + hi]++) throw ParseError(p.line, "pair given twice");
        if (p.w == "tie")
            c.set_tie(a, b);
        else if (p.w == p.a)
            c.set_win(a, b);
        else if (p.w == p.b)
            c.set_win(b, a);
        else
            throw ParseError(p.line, "outcome must be one of the pair or 'tie'");
    }
    if (pairs.size() != static_cast<size_t>(m) * (m - 1) / 2) throw ParseError(0, "COT must cover every pair");
    return {names, c};
}

inline NamedCot parse_cot(const std::string& text) {
    std::istringstream ss(text);
    return parse_cot(ss);
}

inline std::string format_cot(const NamedCot& nc) {
    std::string s = "COT v1\nCANDIDATES";
    for (const auto& n : nc.names) s += " " + n;
    s += "\n";
    int m = nc.cot.size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int g = nc.cot.sign(i, j);
            s += "PAIR " + nc.names[i] + " " + nc.names[j] + " " + (g > 0 ? nc.names[i] : g < 0 ? nc.names[j] : "tie") +
                 "\n";
        }
    return s;
}

}  // namespace copeland
