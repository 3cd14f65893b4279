#pragma once

#include <string>
#include <vector>

#include "dix/problem.hpp"
#include "dix/sets.hpp"

namespace dix {

// Functional dependence graph of a problem: message vertices X_i, one
// output vertex Y_J per nonempty server J, decoded-message vertices
// Xhat_i, with the four edge families (message availability at servers,
// side information, broadcast links, decoding).
class Fdg {
public:
    explicit Fdg(const Problem& p);

    int n() const { return n_; }
    int num_vertices() const { return n_ + servers_ + n_; }

    int x_vertex(int i) const { return i - 1; }
    int y_vertex(MsgSet server) const { return n_ + static_cast<int>(server) - 1; }
    int xhat_vertex(int i) const { return n_ + servers_ + i - 1; }
    bool is_x(int v) const { return v < n_; }
    bool is_y(int v) const { return v >= n_ && v < n_ + servers_; }
    bool is_xhat(int v) const { return v >= n_ + servers_; }
    MsgSet server_of(int v) const { return static_cast<MsgSet>(v - n_ + 1); }
    int receiver_of(int v) const { return is_x(v) ? v + 1 : v - n_ - servers_ + 1; }

    const std::vector<std::vector<int>>& out_edges() const { return out_; }
    std::string label(int v) const;

private:
    int n_;
    int servers_;
    std::vector<std::vector<int>> out_;
};

Fdg build_fdg(const Problem& p);

// Vertex sets are lists of Fdg vertex ids. U may be empty; W and Z must
// be nonempty; all three must be disjoint and within the X/Y vertices.
struct SeparationQuery {
    std::vector<int> u, w, z;
};

struct InducedGraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;  // directed
};

// Vertex-induced subgraph on A together with its ancestors among the
// X/Y vertices (ancestors are found by reverse search in the graph with
// all message out-edges removed). Rejects Xhat vertices in A.
InducedGraph ancestral_graph(const Fdg& g, const std::vector<int>& a);

// True iff no undirected path joins W and Z in the ancestral graph of
// U u W u Z after removing all edges leaving U.
bool fd_separates(const Fdg& g, const SeparationQuery& q);

// Separation instance behind the conditional-independence axiom:
// U = X_L u Y_P with L = [n] \ (K u K'), W = X_K, Z = X_K'.
bool prop16_check(const Problem& p, const ServerSet& servers, MsgSet k, MsgSet kp);

}  // namespace dix
