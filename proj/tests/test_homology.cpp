#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pacc/homology.hpp"
#include "pacc/simplicial_complex.hpp"

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

// square 1-2-3-4 plus k cone vertices each joined to the four corners
SimpleGraph gamma_k(int k) {
    std::vector<std::pair<int, int>> es{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
    for (int c = 5; c < 5 + k; ++c)
        for (int v = 1; v <= 4; ++v) es.push_back({v, c});
    return from_edges(4 + k, es);
}

// full flag complex of a random graph, cap high enough for all Betti numbers
SimplicialComplex random_flag_complex(std::mt19937_64& rng, int max_n = 12) {
    int n = 3 + int(rng() % (max_n - 2));
    double p = 0.15 + 0.5 * double(rng() % 100) / 100.0;
    SimpleGraph g = oracle::random_graph(n, p, rng);
    return clique_complex(g, n);
}

bool boundary_squares_to_zero(const SimplicialComplex& x, int d) {
    oracle::DenseGf2 a = oracle::dense_boundary(x, d);
    oracle::DenseGf2 b = oracle::dense_boundary(x, d + 1);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            int bit = 0;
            for (int k = 0; k < a.cols; ++k) bit ^= a.get(i, k) & b.get(k, j);
            if (bit) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("sphere and ball Betti tables") {
    for (int n = 0; n <= 4; ++n) {
        SimplicialComplex s = octahedral_sphere(n, 6);
        SimplicialComplex d = octahedral_ball(n, 6);
        for (int q = 0; q <= 5; ++q) {
            int expect_s = (n == 0) ? (q == 0 ? 2 : 0) : ((q == 0 || q == n) ? 1 : 0);
            CHECK(betti(s, q) == expect_s);
            CHECK(betti(d, q) == (q == 0 ? 1 : 0));
        }
    }
}

TEST_CASE("Gamma_k family has beta_2 = k - 1") {
    for (int k = 1; k <= 5; ++k) {
        SimplicialComplex x = clique_complex(gamma_k(k), 3);
        CHECK(betti(x, 2) == k - 1);
        CHECK(betti(x, 0) == 1);
        CHECK(betti(x, 1) == 0);
    }
}

TEST_CASE("betti edge cases") {
    SimplicialComplex pt = clique_complex(from_edges(1, {}), 3);
    CHECK(betti(pt, 0) == 1);
    CHECK(betti(pt, 1) == 0);
    CHECK(betti(pt, 2) == 0);

    SimplicialComplex empty;
    CHECK(betti(empty, 0) == 0);
    CHECK(betti(empty, 3) == 0);

    CHECK_THROWS(betti(pt, -1));
    // cap too low for q: must refuse, not silently compute
    SimplicialComplex shallow = clique_complex(gamma_k(2), 2);
    CHECK_THROWS(betti(shallow, 2));
}

TEST_CASE("betti matches the dense oracle; Euler identity") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        SimplicialComplex x = random_flag_complex(rng);
        int top = 0;
        for (int d = 0; d <= x.max_dim; ++d)
            if (x.count(d) > 0) top = d;
        long long alt_betti = 0;
        for (int q = 0; q <= top; ++q) {
            int b = betti(x, q);
            CHECK(b == oracle::dense_betti(x, q));
            alt_betti += (q % 2 == 0) ? b : -b;
        }
        CHECK(alt_betti == euler_characteristic(x));
        CHECK(boundary_squares_to_zero(x, 1));
        if (top >= 2) CHECK(boundary_squares_to_zero(x, 2));
    }
}

TEST_CASE("Euler characteristic reference values") {
    CHECK(euler_characteristic(octahedral_sphere(2)) == 2);  // 6 - 12 + 8
    for (int q = 1; q <= 3; ++q) CHECK(euler_characteristic(octahedral_ball(q)) == 1);
}

TEST_CASE("relative Betti numbers") {
    SimplicialComplex x = clique_complex(gamma_k(2), 3);
    for (int q = 0; q <= 2; ++q) CHECK(relative_betti(x, x, q) == 0);

    SimplicialComplex none;
    for (int q = 0; q <= 2; ++q) CHECK(relative_betti(x, none, q) == betti(x, q));

    // ball relative to its boundary sphere carries the top class
    SimplicialComplex ball = octahedral_ball(2, 3);
    SimplicialComplex boundary = induced(ball, {1, 2, 3, 4});
    CHECK(relative_betti(ball, boundary, 2) == 1);
    CHECK(relative_betti(ball, boundary, 1) == 0);

    SimplicialComplex other = octahedral_sphere(2);
    CHECK_THROWS(relative_betti(ball, other, 2));
}

TEST_CASE("long-exact-sequence rank inequality on random pairs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        SimplicialComplex x = random_flag_complex(rng, 10);
        std::vector<int> vs = x.vertices();
        std::vector<int> sub;
        for (int v : vs)
            if (rng() % 2) sub.push_back(v);
        SimplicialComplex a = induced(x, sub);
        for (int q = 1; q <= 2; ++q) {
            int rel = relative_betti(x, a, q);
            CHECK(rel <= betti(x, q) + betti(a, q - 1));
        }
    }
}

TEST_CASE("induced map ranks: fixtures") {
    SimplicialComplex ball = octahedral_ball(2, 3);
    SimplicialComplex square = induced(ball, {1, 2, 3, 4});
    InducedMapRanks r = induced_map_ranks({ball, square}, 1);
    CHECK(r.image_rank == 0);  // circle dies in the cone
    CHECK(r.kernel_rank == 1);

    SimplicialComplex sphere = octahedral_sphere(2);
    r = induced_map_ranks({sphere, sphere}, 2);
    CHECK(r.image_rank == betti(sphere, 2));
    CHECK(r.kernel_rank == 0);

    // equatorial circle inside the 2-sphere: 1 and 4 opposite, 2 and 5 opposite
    SimplicialComplex equator = induced(sphere, {1, 2, 4, 5});
    CHECK(matches_octahedral_sphere(equator, 1));
    r = induced_map_ranks({sphere, equator}, 1);
    CHECK(r.image_rank == 0);
    CHECK(r.kernel_rank == 1);
}

TEST_CASE("induced map ranks match the dense oracle; rank-nullity") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        SimplicialComplex x = random_flag_complex(rng, 10);
        std::vector<int> vs = x.vertices();
        std::vector<int> sub;
        for (int v : vs)
            if (rng() % 3) sub.push_back(v);
        SimplicialComplex a = induced(x, sub);
        for (int q = 1; q <= 2; ++q) {
            InducedMapRanks r = induced_map_ranks({x, a}, q);
            CHECK(r.image_rank + r.kernel_rank == betti(a, q));
            CHECK(r.image_rank == oracle::dense_image_rank(x, a, q));
        }
    }
}

TEST_CASE("clique-minimality oracle") {
    SimplicialComplex none;

    // the octahedral circle and sphere are minimal carriers of their top class
    CHECK(is_clique_minimal(octahedral_sphere(1, 2), none, 1));
    CHECK(is_clique_minimal(octahedral_sphere(2), none, 2));

    // balls are contractible, never minimal
    CHECK_FALSE(is_clique_minimal(octahedral_ball(1, 2), none, 1));
    CHECK_FALSE(is_clique_minimal(octahedral_ball(2, 3), none, 2));

    // Gamma_2 carries beta_2 but contains no extra slack either way:
    // removing any cone-to-corner edge kills the class, so it is minimal
    CHECK(is_clique_minimal(clique_complex(gamma_k(2), 3), none, 2));
    // Gamma_3 properly contains Gamma_2 with beta_2 > 0
    CHECK_FALSE(is_clique_minimal(clique_complex(gamma_k(3), 3), none, 2));

    CHECK_THROWS(is_clique_minimal(octahedral_sphere(2), none, 0));
    CHECK_THROWS(is_clique_minimal(octahedral_sphere(2), none, 2, 5));  // vertex guard
}
