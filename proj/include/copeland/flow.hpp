#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace copeland {

struct FlowEdge {
    int from, to;
    int64_t cap, cost;
};

class FlowNetwork {
public:
    FlowNetwork() = default;
    FlowNetwork(int nodes, int source, int sink) : n_(nodes), s_(source), t_(sink), labels_(nodes) {
        if (source < 0 || sink < 0 || source >= nodes || sink >= nodes || source == sink)
            throw std::invalid_argument("bad source/sink");
    }

    int add_edge(int u, int v, int64_t cap, int64_t cost) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) throw std::invalid_argument("bad edge endpoints");
        if (cap < 0 || cost < 0) throw std::invalid_argument("capacities and costs must be nonnegative");
        for (const auto& e : edges_)
            if (e.from == v && e.to == u && e.cap > 0 && cap > 0)
                throw std::invalid_argument("antiparallel edges are not allowed");
        edges_.push_back({u, v, cap, cost});
        return static_cast<int>(edges_.size()) - 1;
    }

    int nodes() const { return n_; }
    int source() const { return s_; }
    int sink() const { return t_; }
    const std::vector<FlowEdge>& edges() const { return edges_; }
    void label(int v, std::string s) { labels_.at(v) = std::move(s); }
    const std::string& label(int v) const { return labels_.at(v); }

    // Total capacity leaving the source.
    int64_t source_capacity() const {
        int64_t c = 0;
        for (const auto& e : edges_)
            if (e.from == s_) c += e.cap;
        return c;
    }

    std::string dump() const {
        std::string s = "digraph flow {\n";
        auto nm = [&](int v) { return labels_[v].empty() ? std::to_string(v) : labels_[v]; };
        for (const auto& e : edges_)
            s += "  \"" + nm(e.from) + "\" -> \"" + nm(e.to) + "\" [cap=" + std::to_string(e.cap) +
                 ", cost=" + std::to_string(e.cost) + "];\n";
        return s + "}\n";
    }

private:
    int n_ = 0, s_ = 0, t_ = 1;
    std::vector<FlowEdge> edges_;
    std::vector<std::string> labels_;
};

// Flow per edge of the network, aligned with edges().
struct Flow {
    std::vector<int64_t> f;
};

inline int64_t flow_value(const FlowNetwork& net, const Flow& fl) {
    int64_t v = 0;
    for (size_t i = 0; i < net.edges().size(); ++i) {
        const auto& e = net.edges()[i];
        if (e.from == net.source()) v += fl.f[i];
        if (e.to == net.source()) v -= fl.f[i];
    }
    return v;
}

inline int64_t flow_cost(const FlowNetwork& net, const Flow& fl) {
    int64_t c = 0;
    for (size_t i = 0; i < net.edges().size(); ++i) c += net.edges()[i].cost * fl.f[i];
    return c;
}

// Capacity and conservation check.
inline bool flow_valid(const FlowNetwork& net, const Flow& fl) {
    if (fl.f.size() != net.edges().size()) return false;
    std::vector<int64_t> bal(net.nodes(), 0);
    for (size_t i = 0; i < fl.f.size(); ++i) {
        const auto& e = net.edges()[i];
        if (fl.f[i] < 0 || fl.f[i] > e.cap) return false;
        bal[e.from] -= fl.f[i];
        bal[e.to] += fl.f[i];
    }
    for (int v = 0; v < net.nodes(); ++v)
        if (v != net.source() && v != net.sink() && bal[v] != 0) return false;
    return true;
}

// Successive shortest augmenting paths with Johnson potentials (Dijkstra on reduced costs).
inline std::optional<Flow> solve_min_cost(const FlowNetwork& net, int64_t F) {
    if (F < 0) throw std::invalid_argument("negative target flow");
    struct Arc {
        int to;
        int64_t cap, cost;
        int rev;
        int orig;  // index into net.edges(), -1 for residual back arcs
    };
    int n = net.nodes();
    std::vector<std::vector<Arc>> g(n);
    for (size_t i = 0; i < net.edges().size(); ++i) {
        const auto& e = net.edges()[i];
        g[e.from].push_back({e.to, e.cap, e.cost, static_cast<int>(g[e.to].size()), static_cast<int>(i)});
        g[e.to].push_back({e.from, 0, -e.cost, static_cast<int>(g[e.from].size()) - 1, -1});
    }
    const int64_t INF = std::numeric_limits<int64_t>::max() / 4;
    std::vector<int64_t> pot(n, 0), dist(n);
    std::vector<int> pv(n), pe(n);
    int64_t sent = 0;
    int s = net.source(), t = net.sink();
    while (sent < F) {
        std::fill(dist.begin(), dist.end(), INF);
        dist[s] = 0;
        using QE = std::pair<int64_t, int>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        pq.push({0, s});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (size_t k = 0; k < g[u].size(); ++k) {
                const Arc& a = g[u][k];
                if (a.cap <= 0) continue;
                int64_t nd = d + a.cost + pot[u] - pot[a.to];
                if (nd < dist[a.to]) {
                    dist[a.to] = nd;
                    pv[a.to] = u;
                    pe[a.to] = static_cast<int>(k);
                    pq.push({nd, a.to});
                }
            }
        }
        if (dist[t] >= INF) return std::nullopt;
        for (int v = 0; v < n; ++v)
            if (dist[v] < INF) pot[v] += dist[v];
        int64_t push = F - sent;
        for (int v = t; v != s; v = pv[v]) push = std::min(push, g[pv[v]][pe[v]].cap);
        for (int v = t; v != s; v = pv[v]) {
            Arc& a = g[pv[v]][pe[v]];
            a.cap -= push;
            g[v][a.rev].cap += push;
        }
        sent += push;
    }
    Flow fl;
    fl.f.assign(net.edges().size(), 0);
    for (int u = 0; u < n; ++u)
        for (const auto& a : g[u])
            if (a.orig >= 0) fl.f[a.orig] = net.edges()[a.orig].cap - a.cap;
    return fl;
}

}  // namespace copeland
