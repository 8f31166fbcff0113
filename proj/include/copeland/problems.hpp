#pragma once

#include <array>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "copeland/io.hpp"

namespace copeland {

// Exact cover by 3-sets: ground set B (|B| = 3k) and a family of 3-element subsets.
struct X3CInstance {
    std::vector<std::string> names;      // elements of B
    std::vector<std::array<int, 3>> S;  // indices into names, ascending within a triple
    int k = 0;

    int size() const { return static_cast<int>(names.size()); }

    void validate() const {
        if (k < 1) throw std::invalid_argument("X3C: k must be positive");
        if (size() != 3 * k) throw std::invalid_argument("X3C: |B| must equal 3k");
        for (const auto& s : S) {
            for (int x : s)
                if (x < 0 || x >= size()) throw std::invalid_argument("X3C: set element outside B");
            if (s[0] == s[1] || s[1] == s[2] || s[0] == s[2]) throw std::invalid_argument("X3C: set repeats an element");
        }
    }

    // True when every element of B lies in some set.
    bool covers_ground_set() const {
        std::vector<char> hit(size(), 0);
        for (const auto& s : S)
            for (int x : s) hit[x] = 1;
        for (char h : hit)
            if (!h) return false;
        return true;
    }
};

struct VCInstance {
    std::vector<std::string> names;            // vertices
    std::vector<std::pair<int, int>> edges;    // e_1..e_m
    int k = 0;

    int n() const { return static_cast<int>(names.size()); }
    int m() const { return static_cast<int>(edges.size()); }

    void validate() const {
        if (k < 0) throw std::invalid_argument("VC: k must be nonnegative");
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n() || v >= n()) throw std::invalid_argument("VC: edge endpoint outside V");
            if (u == v) throw std::invalid_argument("VC: self loop");
        }
    }
};

namespace detail {

inline int parse_k(const std::string& tok, int line) {
    if (tok.rfind("k=", 0) != 0) throw ParseError(line, "expected k=<number>");
    try {
        size_t pos = 0;
        int v = std::stoi(tok.substr(2), &pos);
        if (pos != tok.size() - 2) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "bad k value");
    }
}

}  // namespace detail

inline X3CInstance parse_x3c(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "X3C")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'X3C k=<k>'");
    X3CInstance x;
    x.k = detail::parse_k(lines[0].tok[1], lines[0].number);
    bool have_b = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tok[0] == "B") {
            if (have_b) throw ParseError(l.number, "B given twice");
            x.names = parse_candidates_line(l);
            have_b = true;
        } else if (l.tok[0] == "S") {
            if (!have_b) throw ParseError(l.number, "S before B");
            if (l.tok.size() != 2) throw ParseError(l.number, "expected 'S x,y,z'");
            std::array<int, 3> s{};
            std::stringstream ss(l.tok[1]);
            std::string part;
            int c = 0;
            while (std::getline(ss, part, ',')) {
                if (c == 3) throw ParseError(l.number, "set must have exactly three elements");
                s[c++] = detail::lookup(x.names, part, l.number);
            }
            if (c != 3) throw ParseError(l.number, "set must have exactly three elements");
            std::sort(s.begin(), s.end());
            x.S.push_back(s);
        } else {
            throw ParseError(l.number, "unknown keyword '" + l.tok[0] + "'");
        }
    }
    try {
        x.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return x;
}

inline X3CInstance parse_x3c(const std::string& text) {
    std::istringstream ss(text);
    return parse_x3c(ss);
}

inline std::string format_x3c(const X3CInstance& x) {
    std::string s = "X3C k=" + std::to_string(x.k) + "\nB";
    for (const auto& n : x.names) s += " " + n;
    s += "\n";
    for (const auto& t : x.S) s += "S " + x.names[t[0]] + "," + x.names[t[1]] + "," + x.names[t[2]] + "\n";
    return s;
}

// 'VC k=<k>', optional 'VERTICES ...' (for isolated vertices), then 'EDGE u v' lines.
inline VCInstance parse_vc(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "VC")
        throw ParseError(lines.empty() ? 0 : lines[0].number, "expected header 'VC k=<k>'");
    VCInstance g;
    g.k = detail::parse_k(lines[0].tok[1], lines[0].number);
    bool fixed = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tok[0] == "VERTICES") {
            if (fixed || !g.edges.empty()) throw ParseError(l.number, "VERTICES must come first and once");
            g.names = parse_candidates_line(l);
            fixed = true;
        } else if (l.tok[0] == "EDGE") {
            if (l.tok.size() != 3) throw ParseError(l.number, "expected 'EDGE u v'");
            int ids[2];
            for (int q = 0; q < 2; ++q) {
                const auto& nm = l.tok[1 + q];
                auto it = std::find(g.names.begin(), g.names.end(), nm);
                if (it == g.names.end()) {
                    if (fixed) throw ParseError(l.number, "unknown vertex '" + nm + "'");
                    if (!valid_name(nm)) throw ParseError(l.number, "invalid vertex name");
                    g.names.push_back(nm);
                    ids[q] = g.n() - 1;
                } else {
                    ids[q] = static_cast<int>(it - g.names.begin());
                }
            }
            g.edges.push_back({ids[0], ids[1]});
        } else {
            throw ParseError(l.number, "unknown keyword '" + l.tok[0] + "'");
        }
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
    return g;
}

inline VCInstance parse_vc(const std::string& text) {
    std::istringstream ss(text);
    return parse_vc(ss);
}

inline std::string format_vc(const VCInstance& g) {
    std::string s = "VC k=" + std::to_string(g.k) + "\nVERTICES";
    for (const auto& n : g.names) s += " " + n;
    s += "\n";
    for (auto [u, v] : g.edges) s += "EDGE " + g.names[u] + " " + g.names[v] + "\n";
    return s;
}

}  // namespace copeland
