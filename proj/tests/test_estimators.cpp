#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "pacc/estimators.hpp"

using namespace pacc;

namespace {

SimpleGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    SimpleGraph g;
    g.num_nodes = n;
    g.adj.assign(n + 1, {});
    for (auto [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

std::vector<std::pair<int, int>> square_edges() {
    return {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
}

// filled square with center 5, node 6 joined to 1..5 (the instant-kill step)
SimpleGraph instant_kill_graph() {
    auto es = square_edges();
    for (int v = 1; v <= 4; ++v) es.push_back({v, 5});
    for (int v = 1; v <= 5; ++v) es.push_back({v, 6});
    return from_edges(6, es);
}

// square, two cone points 5 and 6 not joined to each other (a Gamma_2 copy)
SimpleGraph creation_graph() {
    auto es = square_edges();
    for (int v = 1; v <= 4; ++v) {
        es.push_back({v, 5});
        es.push_back({v, 6});
    }
    return from_edges(6, es);
}

// octahedral 2-sphere on 1..6, node 7 joined to everything (the kill step)
SimpleGraph kill_graph() {
    SimpleGraph s = octahedral_sphere_graph(2);
    SimpleGraph g;
    g.num_nodes = 7;
    g.adj.assign(8, {});
    for (int v = 1; v <= 6; ++v) {
        g.adj[v] = s.adj[v];
        g.adj[v].push_back(7);
        g.adj[7].push_back(v);
    }
    return g;
}

}  // namespace

TEST_CASE("link_at") {
    MultiDiGraph pa = generate({30, 3, -1.0, 5});
    SimpleGraph g = simplify(pa);
    SimplicialComplex l2 = link_at(g, 2, 3);
    CHECK(l2.count(0) == 1);
    CHECK(l2.simplices[0][0] == Simplex{1});
    CHECK(link_at(g, 1, 3).empty());

    SimpleGraph ik = instant_kill_graph();
    SimplicialComplex l6 = link_at(ik, 6, 3);
    CHECK(l6.count(0) == 5);
    CHECK(l6.count(1) == 8);
    CHECK(l6.count(2) == 4);

    // overload on the complex agrees with the graph route
    SimplicialComplex x = clique_complex(ik, 3);
    SimplicialComplex alt = link_at(x, 6);
    for (int d = 0; d <= 2; ++d) CHECK(alt.count(d) == l6.count(d));
}

TEST_CASE("u and bKL") {
    SimpleGraph cre = creation_graph();
    auto [u6, b6] = u_and_bKL(cre, 6, 2);  // link is a square
    CHECK(u6 == 1);
    CHECK(b6 == 0);

    MultiDiGraph pa = generate({30, 3, -1.0, 5});
    auto [u2, b2] = u_and_bKL(simplify(pa), 2, 2);  // link is a point
    CHECK(u2 == 0);
    CHECK(b2 == 0);

    auto [u7, b7] = u_and_bKL(kill_graph(), 7, 2);  // link is the 2-sphere
    CHECK(u7 == 0);
    CHECK(b7 == 1);
}

TEST_CASE("event_S and b_IK") {
    SimpleGraph cre = creation_graph();
    CHECK(event_S(cre, 6, 2) == 1);
    CHECK(b_IK(cre, 6, 2) == 0);  // link is exactly the square, relative class is 0

    SimpleGraph ik = instant_kill_graph();
    CHECK(event_S(ik, 6, 2) == 1);
    CHECK(b_IK(ik, 6, 2) == 1);
    SimplicialComplex l6 = link_at(ik, 6, 3);
    SimplicialComplex x4 = clique_complex_induced(ik, {1, 2, 3, 4}, 3);
    CHECK(relative_betti(l6, x4, 2) == 1);

    SimpleGraph path = from_edges(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5},
                                      {5, 6}, {1, 6}});  // X^(4) is a path
    CHECK(event_S(path, 6, 2) == 0);
    CHECK(b_IK(path, 6, 2) == 0);

    // drop one containment edge: t no longer adjacent to vertex 1
    auto es = square_edges();
    for (int v = 1; v <= 4; ++v) es.push_back({v, 5});
    for (int v = 2; v <= 4; ++v) es.push_back({v, 6});
    SimpleGraph partial = from_edges(6, es);
    CHECK(event_S(partial, 6, 2) == 0);

    CHECK(event_S(cre, 5, 2) == 0);  // t < 2q + 2
}

TEST_CASE("anchor sphere and hatted events") {
    // square on 1..4, filler up to 20, cones 21 and 22, partial 23
    std::vector<std::pair<int, int>> es = square_edges();
    for (int v = 1; v <= 4; ++v) es.push_back({v, 21});
    for (int v = 1; v <= 4; ++v) es.push_back({v, 22});
    for (int v = 1; v <= 3; ++v) es.push_back({v, 23});
    SimpleGraph g = from_edges(23, es);

    auto anchor = find_anchor_sphere(g, 2, 20);
    REQUIRE(anchor.has_value());
    CHECK(*anchor == std::vector<int>{1, 2, 3, 4});
    CHECK(first_cone_point(g, *anchor) == 21);

    CHECK(event_S_hat(g, 21, 2, *anchor) == 0);  // the first cone point
    CHECK(event_S_hat(g, 22, 2, *anchor) == 1);
    CHECK(event_S_hat(g, 23, 2, *anchor) == 0);  // not adjacent to all of the anchor

    SimpleGraph path = from_edges(25, {{1, 2}, {2, 3}, {3, 4}});
    CHECK_FALSE(find_anchor_sphere(path, 2, 20).has_value());
}

TEST_CASE("hatted instant-kill indicator via induced map ranks") {
    SimplicialComplex square = octahedral_sphere(1, 3);

    InducedMapRanks same = induced_map_ranks({square, square}, 1);
    CHECK(same.kernel_rank == 0);

    SimplicialComplex cone = octahedral_ball(2, 3);
    InducedMapRanks killed = induced_map_ranks({cone, induced(cone, {1, 2, 3, 4})}, 1);
    CHECK(killed.kernel_rank == 1);

    // square plus a disjoint vertex: the class survives
    SimpleGraph g = from_edges(5, square_edges());
    SimplicialComplex with_pt = clique_complex(g, 3);
    InducedMapRanks alive = induced_map_ranks({with_pt, induced(with_pt, {1, 2, 3, 4})}, 1);
    CHECK(alive.kernel_rank == 0);
    CHECK(alive.image_rank == 1);
}

TEST_CASE("mv_increment") {
    // pendant vertex changes nothing in dimensions >= 1
    SimpleGraph pend = from_edges(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
    for (int q = 1; q <= 2; ++q) {
        auto [lhs, rhs] = mv_increment(pend, 4, q);
        CHECK(lhs == 0);
        CHECK(rhs == 0);
        CHECK(lhs == rhs);
    }

    auto [cl, cr] = mv_increment(creation_graph(), 6, 2);
    CHECK(cl == 1);
    CHECK(cr == 1);

    auto [kl, kr] = mv_increment(kill_graph(), 7, 2);
    CHECK(kl == -1);
    CHECK(kr == -1);

    auto [il, ir] = mv_increment(instant_kill_graph(), 6, 2);
    CHECK(il == 0);
    CHECK(ir == 0);

    CHECK_THROWS(mv_increment(pend, 1, 1));
}

TEST_CASE("mv identity sweeps random PA complexes") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SimpleGraph g = simplify(generate({60, 7, -5.0, seed}));
        for (int t = 2; t <= 60; ++t) {
            auto [lhs, rhs] = mv_increment(g, t, 2);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("decomposition inequalities along a trace") {
    for (std::uint64_t seed = 10; seed < 13; ++seed) {
        SimpleGraph g = simplify(generate({300, 7, -5.0, seed}));
        TraceOptions opts;
        opts.q = 2;
        opts.checkpoints = geometric_checkpoints(300, 10);
        LinkTrace trace = compute_trace(g, opts);
        REQUIRE(trace.has_exact);
        REQUIRE(trace.has_hatted);

        std::vector<int> prev(1, 0);
        for (auto& row : trace.rows) {
            int t = row.t;
            // per-node sanity
            CHECK(row.bIK <= row.ell);
            CHECK(row.bIK_hat <= row.ell_hat);
            SimplicialComplex lk = link_at(g, t, 3);
            CHECK((int)lk.vertices().size() <= 7);  // at most m earlier neighbors
            CHECK(row.bKL <= 35);                   // C(7, 3)

            if (row.ell == 1 && t >= 2) {
                // second bullet: ker f_{q-1} >= 1 - b_IK
                std::vector<int> pre(t - 1);
                for (int v = 1; v < t; ++v) pre[v - 1] = v;
                SimplicialComplex xtm1 = clique_complex_induced(g, pre, 3);
                InducedMapRanks f = induced_map_ranks({xtm1, lk}, 1);
                CHECK(f.kernel_rank >= 1 - row.bIK);
            }

            if (row.betti_checkpoint) {
                CHECK(row.lower <= *row.betti_checkpoint);
                CHECK(row.lower_exact <= *row.betti_checkpoint);
                CHECK(*row.betti_checkpoint <= row.upper);
            }
        }
    }
}

TEST_CASE("betti_evolution") {
    std::vector<int> cps{1, 10, 50, 100};
    MultiDiGraph small_m = generate({100, 3, -1.0, 3});
    for (auto [t, b] : betti_evolution(small_m, 2, cps)) CHECK(b == 0);  // m < 2q

    for (auto [t, b] : betti_evolution(small_m, 0, cps)) CHECK(b == 1);

    auto ev1 = betti_evolution(small_m, 1, cps);
    CHECK(ev1.front().second == 0);  // single vertex at t = 1
}

TEST_CASE("geometric checkpoints") {
    auto cps = geometric_checkpoints(1000, 20);
    CHECK(std::is_sorted(cps.begin(), cps.end()));
    CHECK(cps.front() >= 2);
    CHECK(cps.back() == 1000);
    CHECK(std::adjacent_find(cps.begin(), cps.end()) == cps.end());  // no duplicates
    CHECK(cps.size() >= 30);

    CHECK(geometric_checkpoints(5, 20) == std::vector<int>{5});
}

TEST_CASE("trace CSV layout") {
    SimpleGraph g = simplify(generate({40, 3, -1.0, 1}));
    TraceOptions opts;
    opts.q = 2;
    opts.checkpoints = {10, 40};
    LinkTrace trace = compute_trace(g, opts);
    std::stringstream ss;
    write_trace_csv(ss, trace);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "t,u,bKL,ell,bIK,ell_hat,bIK_hat,lower,upper,betti_checkpoint");
    int lines = 0;
    std::string line;
    while (std::getline(ss, line)) ++lines;
    CHECK(lines == 40);
}
