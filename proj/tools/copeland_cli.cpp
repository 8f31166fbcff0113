#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copeland/control.hpp"
#include "copeland/fpt.hpp"
#include "copeland/instance_io.hpp"
#include "copeland/io.hpp"
#include "copeland/microbribery.hpp"
#include "copeland/oracle.hpp"
#include "copeland/problems.hpp"
#include "copeland/reductions.hpp"
#include "copeland/tournament.hpp"

using namespace copeland;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Shared {
    std::string alpha, model, format = "text", file, target, spoilers;
    int64_t budget = -1;
    int64_t cap = kDefaultCap;
    int threads = 1;
};

// Collects the result and the witness fields, printed as text lines or one JSON document.
struct Output {
    std::string command;
    Alpha alpha = Alpha::half();
    WinnerModel model = WinnerModel::Nonunique;
    std::string result;
    std::vector<std::pair<std::string, std::vector<std::string>>> fields;
    std::string body;  // raw text payload (elections, instances)

    void add(const std::string& key, std::vector<std::string> vals) { fields.push_back({key, std::move(vals)}); }
    void add(const std::string& key, const std::string& v) { add(key, std::vector<std::string>{v}); }

    void print(const std::string& format) const {
        if (format == "json") {
            json j;
            j["command"] = command;
            j["alpha"] = alpha.str();
            j["model"] = model_name(model);
            if (!result.empty()) j["result"] = result;
            for (const auto& [k, v] : fields) {
                if (!j.contains(k)) j[k] = json::array();
                if (v.size() == 1)
                    j[k].push_back(v[0]);
                else
                    j[k].push_back(v);
            }
            if (!body.empty()) j["text"] = body;
            std::cout << j.dump(2) << "\n";
            return;
        }
        std::cout << "# " << command << " alpha=" << alpha.str() << " model=" << model_name(model) << "\n";
        if (!result.empty()) std::cout << "RESULT: " << result << "\n";
        for (const auto& [k, v] : fields) {
            std::cout << k << ":";
            for (const auto& s : v) std::cout << " " << s;
            std::cout << "\n";
        }
        std::cout << body;
    }
};

std::string slurp(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ','))
        if (!t.empty()) out.push_back(t);
    return out;
}

std::vector<std::string> names_of(const Election& e, const std::vector<int>& ids) {
    std::vector<std::string> v;
    for (int c : ids) v.push_back(e.names()[c]);
    return v;
}

// Load an election or instance file and apply command-line overrides.
ProblemFile load(const Shared& s, Output& out) {
    ProblemFile f = parse_instance(slurp(s.file));
    auto& in = f.instance;
    if (!s.alpha.empty()) in.alpha = Alpha::parse(s.alpha);
    if (!s.model.empty()) in.model = parse_model(s.model);
    if (!s.target.empty()) {
        in.target = in.election.id(s.target);
        f.has_target = true;
    }
    if (s.budget >= 0) {
        in.budget = s.budget;
        f.has_budget = true;
    }
    if (!s.spoilers.empty()) {
        in.spoilers.clear();
        for (const auto& n : split_commas(s.spoilers)) in.spoilers.push_back(in.election.id(n));
    }
    out.alpha = in.alpha;
    out.model = in.model;
    return f;
}

void need_target(const ProblemFile& f) {
    if (!f.has_target) throw UsageError("a target candidate is required (--target or TARGET)");
}

int finish(Output& out, Decision d, const std::string& format) {
    out.result = decision_name(d);
    out.print(format);
    return d == Decision::Yes ? 0 : d == Decision::No ? 1 : 2;
}

void describe(const ControlAction& a, const ControlInstance& in, Output& out) {
    using K = ControlAction::Kind;
    const char* kind = "none";
    switch (a.kind) {
        case K::None: break;
        case K::AddCandidates: kind = "add-candidates"; break;
        case K::DeleteCandidates: kind = "delete-candidates"; break;
        case K::PartitionCandidates: kind = "partition-candidates"; break;
        case K::AddVoters: kind = "add-voters"; break;
        case K::DeleteVoters: kind = "delete-voters"; break;
        case K::PartitionVoters: kind = "partition-voters"; break;
    }
    out.add("ACTION", kind);
    if (a.kind == K::AddCandidates || a.kind == K::DeleteCandidates)
        out.add("CANDIDATES", names_of(in.election, a.candidates));
    if (a.kind == K::PartitionCandidates) out.add("FIRST", names_of(in.election, a.candidates));
    if (!a.counts.empty()) {
        std::vector<std::string> c;
        for (auto x : a.counts) c.push_back(std::to_string(x));
        out.add(a.kind == K::AddVoters ? "POOL-COUNTS" : a.kind == K::DeleteVoters ? "DELETED-COUNTS" : "FIRST-COUNTS",
                c);
    }
}

void describe(const std::vector<Microbribe>& flips, const Election& e, Output& out) {
    for (const auto& f : flips)
        out.add("FLIP", {std::to_string(f.voter), e.names()[f.winner] + ">" + e.names()[f.loser]});
}

Goal goal_of_mode(const std::string& mode) {
    if (mode == "con") return Goal::Constructive;
    if (mode == "des") return Goal::Destructive;
    throw UsageError("mode must be con or des");
}

// ---------------------------------------------------------------- commands

int cmd_score(const Shared& s) {
    Output out{"score"};
    auto f = load(s, out);
    const auto& e = f.instance.election;
    auto sc = scores(e, f.instance.alpha);
    for (int c = 0; c < e.m(); ++c) out.add("SCORE", {e.names()[c], format_scaled(sc[c], f.instance.alpha)});
    out.result = "YES";
    out.print(s.format);
    return 0;
}

int cmd_winners(const Shared& s, bool condorcet) {
    Output out{"winners"};
    auto f = load(s, out);
    const auto& e = f.instance.election;
    if (condorcet) {
        auto cw = condorcet_winner(e);
        if (cw) out.add("WINNERS", e.names()[*cw]);
        return finish(out, cw ? Decision::Yes : Decision::No, s.format);
    }
    auto w = winners(e, f.instance.alpha);
    out.add("WINNERS", names_of(e, w));
    bool ok = f.instance.model == WinnerModel::Nonunique ? !w.empty() : w.size() == 1;
    return finish(out, ok ? Decision::Yes : Decision::No, s.format);
}

int cmd_build(const Shared& s, const std::string& what, int n, const std::string& ks) {
    Output out{"build " + what};
    if (!s.alpha.empty()) out.alpha = Alpha::parse(s.alpha);
    if (!s.model.empty()) out.model = parse_model(s.model);
    Election e;
    if (what == "mcgarvey" || what == "two-voter") {
        auto cot = parse_cot(slurp(s.file));
        e = what == "mcgarvey" ? mcgarvey(cot) : two_voter_realization(cot);
    } else if (what == "pad") {
        if (n < 1) throw UsageError("pad needs --n >= 1");
        e = pad_election(n);
    } else if (what == "targeted") {
        auto base = parse_instance(slurp(s.file)).instance.election;
        std::vector<int> k;
        for (const auto& t : split_commas(ks)) k.push_back(std::stoi(t));
        e = targeted_election(base, n, k);
    } else {
        throw UsageError("build kinds: mcgarvey, two-voter, pad, targeted");
    }
    out.body = format_election(e);
    out.print(s.format);
    return 0;
}

int cmd_microbribery(const Shared& s, const std::string& mode) {
    Output out{"microbribery"};
    auto f = load(s, out);
    need_target(f);
    const auto& in = f.instance;
    auto r = microbribery(goal_of_mode(mode), in.election, in.alpha, in.target, in.budget, in.model);
    if (!r.supported) {
        out.add("NOTE", "no polynomial algorithm for this case; use the oracle command");
        return finish(out, Decision::Unsupported, s.format);
    }
    out.add("MINCOST", r.cost ? std::to_string(*r.cost) : "none");
    bool yes = microbribery_yes(r, in.budget);
    if (yes) describe(r.witness, in.election, out);
    return finish(out, yes ? Decision::Yes : Decision::No, s.format);
}

int cmd_control(const Shared& s, const std::string& type) {
    Output out{"control " + type};
    auto f = load(s, out);
    need_target(f);
    auto tag = parse_tag(type);
    const auto& in = f.instance;
    Verdict v;
    if (tag.constructive && tag.action == Action::ACu && !tag.condorcet)
        v = ccacu_greedy(in);
    else if (!tag.constructive && tag.action == Action::AC)
        v = dcac_greedy(in, in.budget);
    else if (!tag.constructive && tag.action == Action::ACu)
        v = dcac_greedy(in, static_cast<int64_t>(in.spoilers.size()));
    else if (!tag.constructive && tag.action == Action::DC)
        v = dcdc_greedy(in, in.budget);
    else if (!tag.constructive && is_candidate_action(tag.action))
        v = dc_partition(in, tag.action);
    else
        throw UsageError(type + " has no polynomial algorithm; use the oracle or fpt command");
    if (!v.note.empty()) out.add("NOTE", v.note);
    if (v.witness) describe(*v.witness, in, out);
    return finish(out, v.decision, s.format);
}

int cmd_oracle(const Shared& s, std::string problem) {
    Output out{"oracle"};
    OracleOptions opt;
    opt.cap = s.cap;
    opt.threads = s.threads;
    if (problem == "X3C" || problem == "VC") {
        out.command = "oracle " + problem;
        CoverResult r;
        if (problem == "X3C") {
            auto x = parse_x3c(slurp(s.file));
            r = x3c_oracle(x, opt);
            std::vector<std::string> sets;
            for (int i : r.chosen) sets.push_back(x.names[x.S[i][0]] + "," + x.names[x.S[i][1]] + "," + x.names[x.S[i][2]]);
            if (r.decision == Decision::Yes) out.add("COVER", sets);
        } else {
            auto g = parse_vc(slurp(s.file));
            r = vertex_cover_oracle(g, opt);
            std::vector<std::string> vs;
            for (int v : r.chosen) vs.push_back(g.names[v]);
            if (r.decision == Decision::Yes) out.add("COVER", vs);
        }
        out.add("NODES", std::to_string(r.nodes));
        return finish(out, r.decision, s.format);
    }
    auto f = load(s, out);
    if (problem.empty()) problem = f.problem;
    if (problem.empty()) throw UsageError("--problem is required (or PROBLEM in the instance)");
    out.command = "oracle " + problem;
    need_target(f);
    const auto& in = f.instance;
    if (problem == "CC-BRIBERY" || problem == "DC-BRIBERY") {
        auto r = bribery_oracle(problem[0] == 'C' ? Goal::Constructive : Goal::Destructive, in.election, in.alpha,
                                in.target, in.budget, in.model, opt);
        if (r.witness) {
            std::vector<std::string> rm;
            for (auto c : r.witness->removed) rm.push_back(std::to_string(c));
            out.add("BRIBED-COUNTS", rm);
            for (const auto& p : r.witness->replaced) out.add("NEW-VOTE", format_voter({p, 1}, in.election.names()));
        }
        out.add("NODES", std::to_string(r.nodes));
        return finish(out, r.decision, s.format);
    }
    if (problem == "CC-MICROBRIBERY" || problem == "DC-MICROBRIBERY") {
        auto r = microbribery_oracle(problem[0] == 'C' ? Goal::Constructive : Goal::Destructive, in.election, in.alpha,
                                     in.target, in.budget, in.model, opt);
        if (r.cost) out.add("MINCOST", std::to_string(*r.cost));
        if (r.decision == Decision::Yes) describe(r.witness, in.election, out);
        out.add("NODES", std::to_string(r.nodes));
        return finish(out, r.decision, s.format);
    }
    auto tag = parse_tag(problem);
    auto v = control_oracle(tag, in, opt);
    if (v.witness) describe(*v.witness, in, out);
    out.add("NODES", std::to_string(v.nodes));
    return finish(out, v.decision, s.format);
}

CotGoal goal_by_name(const std::string& g, const ControlTag& tag, const ControlInstance& in) {
    if (g.empty() || g == "p-wins") return goals::p_wins(in.target, tag.constructive, in.model);
    if (g == "lex-order") return goals::lexicographic_order(in.election.names());
    if (g == "all-distinct") return goals::all_distinct();
    if (g.rfind("cowinners=", 0) == 0) return goals::exactly_cowinners(std::stoul(g.substr(10)));
    throw UsageError("goals: p-wins, lex-order, all-distinct, cowinners=<q>");
}

int cmd_fpt(const Shared& s, std::string problem, const std::string& bound, const std::string& goal) {
    Output out{"fpt"};
    auto f = load(s, out);
    if (problem.empty()) problem = f.problem;
    if (problem.empty()) throw UsageError("--problem is required (or PROBLEM in the instance)");
    out.command = "fpt " + problem + " bound=" + bound;
    need_target(f);
    auto tag = parse_tag(problem);
    const auto& in = f.instance;
    if (tag.condorcet) throw UsageError("fpt handles Copeland control tags only");
    Verdict v;
    if (bound == "voters") {
        if (is_candidate_action(tag.action)) throw UsageError("bounded voters covers AV, DV and PV");
        if (!goal.empty() && goal != "p-wins") throw UsageError("bounded voters supports the p-wins goal only");
        v = fpt_voter_control_bv(tag, in);
    } else if (bound == "candidates") {
        v = extended_control(goal_by_name(goal, tag, in), tag, in);
    } else {
        throw UsageError("--bound must be candidates or voters");
    }
    if (v.witness) describe(*v.witness, in, out);
    return finish(out, v.decision, s.format);
}

int cmd_reduce(const Shared& s, const std::string& from, const std::string& to, bool canned) {
    Output out{"reduce " + from + " " + to};
    Alpha a = s.alpha.empty() ? Alpha::half() : Alpha::parse(s.alpha);
    WinnerModel model = s.model.empty() ? WinnerModel::Nonunique : parse_model(s.model);
    out.alpha = a;
    out.model = model;
    ReductionOptions opt{canned};
    ReducedInstance ri;
    if (from == "x3c") {
        auto x = parse_x3c(slurp(s.file));
        if (to == "CC-BRIBERY" || to == "DC-BRIBERY")
            ri = x3c_to_bribery(x, to[0] == 'C' ? Goal::Constructive : Goal::Destructive, model, a, opt);
        else if (to.rfind("CONDORCET-", 0) == 0)
            ri = x3c_to_condorcet(x, parse_tag(to).action, opt);
        else
            ri = x3c_to_voter_control(x, parse_tag(to), a, model, opt);
    } else if (from == "vc") {
        ri = vc_to_candidate_control(parse_vc(slurp(s.file)), parse_tag(to), a, model, opt);
    } else {
        throw UsageError("--from must be x3c or vc");
    }
    out.alpha = ri.instance.alpha;
    out.model = ri.instance.model;
    out.add("CONSTRUCTION", ri.construction);
    for (const auto& c : ri.report) out.add("CLAIM", {c.ok ? "ok" : "FAILED", c.claim});
    std::string body = format_instance(ri.tag, ri.instance);
    if (s.format == "json") {
        out.body = body;
        out.print("json");
    } else {
        // comment lines only, so the transcript stays a valid instance file
        std::cout << "# " << out.command << " alpha=" << out.alpha.str() << " model=" << model_name(out.model) << "\n";
        for (const auto& [k, v] : out.fields) {
            std::cout << "# " << k << ":";
            for (const auto& x : v) std::cout << " " << x;
            std::cout << "\n";
        }
        std::cout << body;
    }
    if (!ri.structure_ok()) std::cerr << "error: generated instance violates its structural claims\n";
    return ri.structure_ok() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Copeland elections: winners, bribery, control, oracles and reductions"};
    app.require_subcommand(1);
    Shared s;
    auto common = [&](CLI::App* c, bool file = true) {
        c->add_option("--alpha", s.alpha, "tie value b/d in [0,1] (default 1/2)");
        c->add_option("--winner-model,--model", s.model, "nonunique (any) or unique");
        c->add_option("--format", s.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        if (file) c->add_option("file", s.file, "input file ('-' for stdin)")->required();
    };
    auto instance_opts = [&](CLI::App* c) {
        c->add_option("--target", s.target, "target candidate name");
        c->add_option("--budget", s.budget, "budget k");
        c->add_option("--spoilers", s.spoilers, "comma-separated spoiler candidates");
    };

    auto* score = app.add_subcommand("score", "Copeland scores");
    common(score);
    auto* win = app.add_subcommand("winners", "Copeland winners");
    bool condorcet = false;
    common(win);
    win->add_flag("--condorcet", condorcet, "report the Condorcet winner instead");

    auto* build = app.add_subcommand("build", "construct elections from outcome tables");
    std::string what, ks;
    int n = 0;
    build->add_option("kind", what, "mcgarvey, two-voter, pad or targeted")->required();
    common(build, false);
    build->add_option("file", s.file, "COT file (mcgarvey, two-voter) or election file (targeted)");
    build->add_option("--n", n, "padding size");
    build->add_option("--k", ks, "comma-separated k_i values (targeted)");

    auto* mb = app.add_subcommand("microbribery", "flow-based microbribery");
    std::string mode = "con";
    common(mb);
    instance_opts(mb);
    mb->add_option("--mode", mode, "con or des")->check(CLI::IsMember({"con", "des"}));

    auto* ctl = app.add_subcommand("control", "polynomial-time control algorithms");
    std::string type;
    common(ctl);
    instance_opts(ctl);
    ctl->add_option("--type", type, "control tag, e.g. DCAC or CCACu")->required();

    auto* orc = app.add_subcommand("oracle", "exhaustive search");
    std::string problem;
    common(orc);
    instance_opts(orc);
    orc->add_option("--problem", problem, "control tag, CC-/DC-BRIBERY, CC-/DC-MICROBRIBERY, X3C or VC");
    orc->add_option("--cap", s.cap, "node cap")->check(CLI::PositiveNumber);
    orc->add_option("--threads", s.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* fpt = app.add_subcommand("fpt", "control with few candidates or few voters");
    std::string bound = "candidates", goal;
    common(fpt);
    instance_opts(fpt);
    fpt->add_option("--problem", problem, "control tag");
    fpt->add_option("--bound", bound, "candidates or voters");
    fpt->add_option("--goal", goal, "p-wins, lex-order, all-distinct or cowinners=<q>");

    auto* red = app.add_subcommand("reduce", "hardness-reduction instance generator");
    std::string from, to;
    bool canned = false;
    common(red);
    red->add_option("--from", from, "x3c or vc")->required();
    red->add_option("--to", to, "target problem tag")->required();
    red->add_flag("--paper-convention", canned, "emit a fixed instance for malformed or trivial sources");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*score) return cmd_score(s);
        if (*win) return cmd_winners(s, condorcet);
        if (*build) return cmd_build(s, what, n, ks);
        if (*mb) return cmd_microbribery(s, mode);
        if (*ctl) return cmd_control(s, type);
        if (*orc) return cmd_oracle(s, problem);
        if (*fpt) return cmd_fpt(s, problem, bound, goal);
        if (*red) return cmd_reduce(s, from, to, canned);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
