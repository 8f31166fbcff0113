#pragma once

#include <istream>
#include <sstream>
#include <string>

#include "copeland/control.hpp"
#include "copeland/io.hpp"

// INSTANCE v1: a header (PROBLEM, ALPHA, MODEL, TARGET, BUDGET, SPOILERS, all optional),
// then an embedded ELECTION v1 whose voter lines may be prefixed by POOL for
// unregistered voters.

namespace copeland {

struct ProblemFile {
    std::string problem;  // tag as written, may be empty
    ControlInstance instance;
    bool has_alpha = false, has_model = false, has_target = false, has_budget = false;
};

inline WinnerModel parse_model(const std::string& s) {
    if (s == "nonunique" || s == "any") return WinnerModel::Nonunique;
    if (s == "unique") return WinnerModel::Unique;
    throw std::invalid_argument("unknown winner model '" + s + "'");
}

inline const char* model_name(WinnerModel m) { return m == WinnerModel::Unique ? "unique" : "nonunique"; }

inline ProblemFile parse_instance(std::istream& in) {
    auto lines = detail::tokenize(in);
    if (lines.empty()) throw ParseError(0, "empty input");
    ProblemFile f;
    const auto& h = lines[0].tok;
    size_t i = 0;
    std::string target;
    std::vector<std::string> spoilers;
    if (h.size() == 2 && h[0] == "INSTANCE" && h[1] == "v1") {
        for (i = 1; i < lines.size(); ++i) {
            const auto& l = lines[i];
            const auto& k = l.tok[0];
            if (k == "ELECTION") break;
            auto one = [&] {
                if (l.tok.size() != 2) throw ParseError(l.number, k + " takes one value");
                return l.tok[1];
            };
            try {
                if (k == "PROBLEM") {
                    f.problem = one();
                } else if (k == "ALPHA") {
                    f.instance.alpha = Alpha::parse(one());
                    f.has_alpha = true;
                } else if (k == "MODEL") {
                    f.instance.model = parse_model(one());
                    f.has_model = true;
                } else if (k == "TARGET") {
                    target = one();
                    f.has_target = true;
                } else if (k == "BUDGET") {
                    auto v = one();
                    f.instance.budget = v == "0" ? 0 : detail::parse_count(v, l.number);
                    f.has_budget = true;
                } else if (k == "SPOILERS") {
                    spoilers.assign(l.tok.begin() + 1, l.tok.end());
                } else {
                    throw ParseError(l.number, "unknown keyword '" + k + "'");
                }
            } catch (const std::invalid_argument& e) {
                throw ParseError(l.number, e.what());
            }
        }
    }
    if (i >= lines.size() || lines[i].tok.size() != 2 || lines[i].tok[0] != "ELECTION" || lines[i].tok[1] != "v1")
        throw ParseError(i < lines.size() ? lines[i].number : 0, "expected 'ELECTION v1'");
    std::vector<std::string> names;
    bool have_names = false;
    std::vector<VoterBlock> voters, pool;
    for (++i; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tok[0] == "CANDIDATES") {
            if (have_names) throw ParseError(l.number, "CANDIDATES given twice");
            names = parse_candidates_line(l);
            have_names = true;
            continue;
        }
        if (!have_names) throw ParseError(l.number, "voter line before CANDIDATES");
        if (l.tok[0] == "POOL") {
            std::vector<std::string> rest(l.tok.begin() + 1, l.tok.end());
            if (rest.empty()) throw ParseError(l.number, "empty POOL line");
            pool.push_back(parse_voter_line(rest, names, l.number));
        } else {
            voters.push_back(parse_voter_line(l.tok, names, l.number));
        }
    }
    if (!have_names) throw ParseError(0, "missing CANDIDATES line");
    for (const auto& s : spoilers) f.instance.spoilers.push_back(detail::lookup(names, s, 0));
    if (f.has_target) f.instance.target = detail::lookup(names, target, 0);
    f.instance.election = Election(std::move(names), std::move(voters));
    f.instance.pool = std::move(pool);
    return f;
}

inline ProblemFile parse_instance(const std::string& text) {
    std::istringstream ss(text);
    return parse_instance(ss);
}

inline std::string format_instance(const std::string& problem, const ControlInstance& in) {
    const auto& names = in.election.names();
    std::string s = "INSTANCE v1\n";
    if (!problem.empty()) s += "PROBLEM " + problem + "\n";
    s += "ALPHA " + in.alpha.str() + "\n";
    s += std::string("MODEL ") + model_name(in.model) + "\n";
    s += "TARGET " + names.at(in.target) + "\n";
    s += "BUDGET " + std::to_string(in.budget) + "\n";
    if (!in.spoilers.empty()) {
        s += "SPOILERS";
        for (int d : in.spoilers) s += " " + names[d];
        s += "\n";
    }
    s += format_election(in.election);
    for (const auto& b : in.pool) s += "POOL " + format_voter(b, names) + "\n";
    return s;
}

}  // namespace copeland
