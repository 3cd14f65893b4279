#include "dix/fdg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace dix {

Fdg::Fdg(const Problem& p) : n_(p.n()), servers_(static_cast<int>(full_mask(p.n()))) {
    out_.resize(static_cast<std::size_t>(num_vertices()));
    for (MsgSet j = 1; j <= full_mask(n_); ++j) {
        for (int i : msgset_to_list(j)) out_[static_cast<std::size_t>(x_vertex(i))].push_back(y_vertex(j));
        for (int i = 1; i <= n_; ++i) out_[static_cast<std::size_t>(y_vertex(j))].push_back(xhat_vertex(i));
    }
    for (int i = 1; i <= n_; ++i) {
        for (int j : msgset_to_list(p.a(i))) out_[static_cast<std::size_t>(x_vertex(j))].push_back(xhat_vertex(i));
        out_[static_cast<std::size_t>(xhat_vertex(i))].push_back(x_vertex(i));
    }
}

std::string Fdg::label(int v) const {
    if (is_x(v)) return "x" + std::to_string(receiver_of(v));
    if (is_xhat(v)) return "xh" + std::to_string(receiver_of(v));
    std::string s = msgset_to_string(server_of(v));
    return "y" + s.substr(1, s.size() - 2);
}

Fdg build_fdg(const Problem& p) { return Fdg(p); }

InducedGraph ancestral_graph(const Fdg& g, const std::vector<int>& a) {
    for (int v : a) {
        if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("ancestral_graph: vertex out of range");
        if (g.is_xhat(v)) throw std::invalid_argument("ancestral_graph: decoded-message vertices are not allowed");
    }
    // Reverse reachability among X/Y vertices in the subgraph with
    // message out-edges removed: Y vertices have no in-edges left there,
    // so the search collects nothing beyond A itself.
    int nv = g.num_vertices();
    std::vector<char> in_set(static_cast<std::size_t>(nv), 0);
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        if (g.is_x(v)) continue;  // drop edges whose tail is a message vertex
        if (g.is_xhat(v)) continue;  // ancestors live among X/Y only
        for (int w : g.out_edges()[static_cast<std::size_t>(v)])
            if (!g.is_xhat(w)) rev[static_cast<std::size_t>(w)].push_back(v);
    }
    std::queue<int> bfs;
    for (int v : a)
        if (!in_set[static_cast<std::size_t>(v)]) {
            in_set[static_cast<std::size_t>(v)] = 1;
            bfs.push(v);
        }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : rev[static_cast<std::size_t>(v)])
            if (!in_set[static_cast<std::size_t>(w)]) {
                in_set[static_cast<std::size_t>(w)] = 1;
                bfs.push(w);
            }
    }
    InducedGraph out;
    for (int v = 0; v < nv; ++v)
        if (in_set[static_cast<std::size_t>(v)]) out.vertices.push_back(v);
    for (int v : out.vertices)
        for (int w : g.out_edges()[static_cast<std::size_t>(v)])
            if (w < nv && in_set[static_cast<std::size_t>(w)]) out.edges.emplace_back(v, w);
    return out;
}

bool fd_separates(const Fdg& g, const SeparationQuery& q) {
    if (q.w.empty() || q.z.empty()) throw std::invalid_argument("fd_separates: W and Z must be nonempty");
    std::unordered_set<int> seen;
    for (const auto* set : {&q.u, &q.w, &q.z})
        for (int v : *set) {
            if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("fd_separates: vertex out of range");
            if (g.is_xhat(v)) throw std::invalid_argument("fd_separates: decoded-message vertices are not allowed");
            if (!seen.insert(v).second) throw std::invalid_argument("fd_separates: query sets must be disjoint");
        }
    std::vector<int> a;
    a.insert(a.end(), q.u.begin(), q.u.end());
    a.insert(a.end(), q.w.begin(), q.w.end());
    a.insert(a.end(), q.z.begin(), q.z.end());
    InducedGraph sub = ancestral_graph(g, a);

    std::unordered_set<int> blocked(q.u.begin(), q.u.end());
    // undirected adjacency, edges leaving U removed
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()));
    for (auto [from, to] : sub.edges) {
        if (blocked.count(from)) continue;
        adj[static_cast<std::size_t>(from)].push_back(to);
        adj[static_cast<std::size_t>(to)].push_back(from);
    }
    std::vector<char> reach(static_cast<std::size_t>(g.num_vertices()), 0);
    std::queue<int> bfs;
    for (int v : q.w) {
        reach[static_cast<std::size_t>(v)] = 1;
        bfs.push(v);
    }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!reach[static_cast<std::size_t>(w)]) {
                reach[static_cast<std::size_t>(w)] = 1;
                bfs.push(w);
            }
    }
    for (int v : q.z)
        if (reach[static_cast<std::size_t>(v)]) return false;
    return true;
}

bool prop16_check(const Problem& p, const ServerSet& servers, MsgSet k, MsgSet kp) {
    if (k == 0 || kp == 0) throw std::invalid_argument("prop16_check: K and K' must be nonempty");
    if (k & kp) throw std::invalid_argument("prop16_check: K and K' must be disjoint");
    Fdg g(p);
    SeparationQuery q;
    MsgSet l = full_mask(p.n()) & ~(k | kp);
    for (int i : msgset_to_list(l)) q.u.push_back(g.x_vertex(i));
    servers.for_each([&](MsgSet j) { q.u.push_back(g.y_vertex(j)); });
    for (int i : msgset_to_list(k)) q.w.push_back(g.x_vertex(i));
    for (int i : msgset_to_list(kp)) q.z.push_back(g.x_vertex(i));
    return fd_separates(g, q);
}

}  // namespace dix
