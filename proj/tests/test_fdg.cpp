#include <doctest.h>

#include "dix/fdg.hpp"

using namespace dix;

TEST_CASE("fdg construction") {
    Problem p = parse_problem("(1|-)");
    Fdg g(p);
    CHECK(g.num_vertices() == 3);  // x1, y{1}, xh1
    CHECK(g.out_edges()[static_cast<std::size_t>(g.x_vertex(1))] == std::vector<int>{g.y_vertex(msgset_of({1}))});
    CHECK(g.out_edges()[static_cast<std::size_t>(g.y_vertex(msgset_of({1})))] == std::vector<int>{g.xhat_vertex(1)});
    CHECK(g.out_edges()[static_cast<std::size_t>(g.xhat_vertex(1))] == std::vector<int>{g.x_vertex(1)});
}

TEST_CASE("fdg edge counts follow the closed forms") {
    for (int n = 1; n <= 5; ++n) {
        std::string seq;
        for (int i = 1; i <= n; ++i) {
            if (i > 1) seq += ',';
            seq += "(" + std::to_string(i) + "|";
            seq += (i == 1 ? "-" : std::to_string(i - 1));
            seq += ")";
        }
        Problem p = parse_problem(seq);
        Fdg g(p);
        std::size_t servers = (std::size_t{1} << n) - 1;
        CHECK(g.num_vertices() == static_cast<int>(2 * n + servers));
        std::size_t edges = 0;
        for (const auto& adj : g.out_edges()) edges += adj.size();
        std::size_t x_to_y = static_cast<std::size_t>(n) << (n - 1);  // sum over servers of |J|
        std::size_t x_to_xh = static_cast<std::size_t>(n - 1);        // total side information here
        std::size_t y_to_xh = servers * static_cast<std::size_t>(n);
        std::size_t xh_to_x = static_cast<std::size_t>(n);
        CHECK(edges == x_to_y + x_to_xh + y_to_xh + xh_to_x);
    }
}

TEST_CASE("ancestral graph stays within the queried X/Y vertices") {
    Problem p = parse_problem("(1|-),(2|4),(3|2),(4|3)");
    Fdg g(p);
    // a lone server vertex has no X/Y ancestors
    InducedGraph sub = ancestral_graph(g, {g.y_vertex(msgset_of({1, 2}))});
    CHECK(sub.vertices == std::vector<int>{g.y_vertex(msgset_of({1, 2}))});
    CHECK(sub.edges.empty());
    // all message vertices: nothing else creeps in
    std::vector<int> xs;
    for (int i = 1; i <= 4; ++i) xs.push_back(g.x_vertex(i));
    sub = ancestral_graph(g, xs);
    CHECK(sub.vertices == xs);
    CHECK(sub.edges.empty());
    CHECK_THROWS_AS(ancestral_graph(g, {g.xhat_vertex(1)}), std::invalid_argument);
}

TEST_CASE("fd separation on the four-server picture") {
    Problem p = parse_problem("(1|-),(2|4),(3|2),(4|3)");
    Fdg g(p);
    SeparationQuery q;
    q.u = {g.x_vertex(1), g.y_vertex(msgset_of({1, 2})), g.y_vertex(msgset_of({1, 3})), g.y_vertex(msgset_of({1, 4}))};
    q.w = {g.x_vertex(2)};
    q.z = {g.x_vertex(3), g.x_vertex(4)};
    CHECK(fd_separates(g, q));

    // a queried bridging server defeats separation
    SeparationQuery q2;
    q2.u = {g.x_vertex(3)};
    q2.w = {g.x_vertex(1)};
    q2.z = {g.x_vertex(2), g.y_vertex(msgset_of({1, 2}))};
    CHECK(!fd_separates(g, q2));

    // disconnected query sets are separated whatever U is
    SeparationQuery q3;
    q3.u = {g.x_vertex(3)};
    q3.w = {g.x_vertex(1)};
    q3.z = {g.x_vertex(2)};
    CHECK(fd_separates(g, q3));

    SeparationQuery bad;
    bad.u = {g.x_vertex(1)};
    bad.w = {g.x_vertex(1)};
    bad.z = {g.x_vertex(2)};
    CHECK_THROWS_AS(fd_separates(g, bad), std::invalid_argument);
}

TEST_CASE("empty conditioning set") {
    Problem p = parse_problem("(1|2),(2|1)");
    Fdg g(p);
    SeparationQuery q;
    q.w = {g.x_vertex(1), g.y_vertex(msgset_of({1, 2}))};
    q.z = {g.x_vertex(2)};
    CHECK(!fd_separates(g, q));  // x2 -> y{1,2} keeps them joined
}

TEST_CASE("separation guarantee behind the independence axiom, exhaustively for n=4") {
    Problem p = parse_problem("(1|-),(2|4),(3|2),(4|3)");
    int checked = 0, bridged_false = 0, bridged_total = 0;
    for (MsgSet k = 1; k <= full_mask(4); ++k) {
        MsgSet rest = full_mask(4) & ~k;
        for (MsgSet kp = rest; kp != 0; kp = (kp - 1) & rest) {
            if (kp < k) continue;
            ServerSet allowed = not_touch(4, k) | not_touch(4, kp);  // N \ T_{K,K'}
            CHECK(prop16_check(p, allowed, k, kp));
            ++checked;
            // a server bridging both sets typically defeats separation
            ServerSet bridge = touch_both(4, k, kp);
            if (!bridge.empty()) {
                ServerSet with_bridge = allowed;
                with_bridge.insert(bridge.to_vector().front());
                ++bridged_total;
                if (!prop16_check(p, with_bridge, k, kp)) ++bridged_false;
            }
        }
    }
    CHECK(checked == 25);
    CHECK(bridged_false == bridged_total);  // every bridging server here connects the sets
    CHECK_THROWS_AS(prop16_check(p, ServerSet(4), 0, msgset_of({1})), std::invalid_argument);
}
