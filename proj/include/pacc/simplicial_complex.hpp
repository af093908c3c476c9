#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacc/pa_graph.hpp"

namespace pacc {

using Simplex = std::vector<int>;  // strictly increasing vertex tuple

// Flag complex truncated at a dimension cap. simplices[d] holds the
// d-simplices in lexicographic order; max_dim records the cap the complex is
// complete up to, not the realized top dimension.
struct SimplicialComplex {
    int max_dim = 0;
    std::vector<std::vector<Simplex>> simplices;  // size max_dim + 1

    SimplicialComplex() : simplices(1) {}
    explicit SimplicialComplex(int cap) : max_dim(cap), simplices(cap + 1) {}

    int count(int d) const {
        return (d >= 0 && d <= max_dim) ? (int)simplices[d].size() : 0;
    }

    bool contains(const Simplex& s) const {
        int d = (int)s.size() - 1;
        if (d < 0 || d > max_dim) return false;
        return std::binary_search(simplices[d].begin(), simplices[d].end(), s);
    }

    bool empty() const {
        return simplices.empty() || simplices[0].empty();
    }

    std::vector<int> vertices() const {
        std::vector<int> vs;
        vs.reserve(count(0));
        for (auto& s : simplices[0]) vs.push_back(s[0]);
        return vs;
    }

    void sort_all() {
        for (auto& level : simplices) std::sort(level.begin(), level.end());
    }
};

namespace detail {

inline std::vector<int> sorted_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline void expand_cliques(const SimpleGraph& g, Simplex& clique,
                           const std::vector<int>& candidates, int max_dim,
                           SimplicialComplex& out) {
    out.simplices[clique.size() - 1].push_back(clique);
    if ((int)clique.size() - 1 == max_dim) return;
    for (int v : candidates) {
        clique.push_back(v);
        std::vector<int> next = sorted_intersection(candidates, g.adj[v]);
        next.erase(next.begin(), std::upper_bound(next.begin(), next.end(), v));
        expand_cliques(g, clique, next, max_dim, out);
        clique.pop_back();
    }
}

}  // namespace detail

// Clique complex of the induced subgraph on verts (sorted, original labels kept).
inline SimplicialComplex clique_complex_induced(const SimpleGraph& g, const std::vector<int>& verts,
                                                int max_dim) {
    if (max_dim < 0) throw std::invalid_argument("clique_complex: max_dim must be >= 0");
    SimplicialComplex x(max_dim);
    Simplex clique;
    for (int v : verts) {
        // candidates: neighbors of v within verts, above v
        std::vector<int> cand = detail::sorted_intersection(verts, g.adj[v]);
        cand.erase(cand.begin(), std::upper_bound(cand.begin(), cand.end(), v));
        clique.assign(1, v);
        detail::expand_cliques(g, clique, cand, max_dim, x);
    }
    x.sort_all();
    return x;
}

inline SimplicialComplex clique_complex(const SimpleGraph& g, int max_dim) {
    std::vector<int> verts(g.num_nodes);
    std::iota(verts.begin(), verts.end(), 1);
    return clique_complex_induced(g, verts, max_dim);
}

// Subcomplex induced on a vertex set: every simplex whose vertices lie in vs.
inline SimplicialComplex induced(const SimplicialComplex& x, const std::vector<int>& vs) {
    std::vector<int> sorted_vs(vs);
    std::sort(sorted_vs.begin(), sorted_vs.end());
    SimplicialComplex r(x.max_dim);
    for (int d = 0; d <= x.max_dim; ++d)
        for (auto& s : x.simplices[d]) {
            bool in = true;
            for (int v : s)
                if (!std::binary_search(sorted_vs.begin(), sorted_vs.end(), v)) { in = false; break; }
            if (in) r.simplices[d].push_back(s);
        }
    return r;
}

// X^(t): all simplices with vertices in {1, ..., t}.
inline SimplicialComplex prefix(const SimplicialComplex& x, int t) {
    if (t < 1) throw std::invalid_argument("prefix: t must be >= 1");
    SimplicialComplex r(x.max_dim);
    for (int d = 0; d <= x.max_dim; ++d)
        for (auto& s : x.simplices[d])
            if (s.back() <= t) r.simplices[d].push_back(s);
    return r;
}

// Link of v: simplices s with v not in s and s + {v} in x.
inline SimplicialComplex link(const SimplicialComplex& x, int v) {
    if (!x.contains({v})) throw std::invalid_argument("link: vertex not in complex");
    SimplicialComplex r(std::max(0, x.max_dim - 1));
    for (int d = 1; d <= x.max_dim; ++d)
        for (auto& s : x.simplices[d]) {
            auto it = std::lower_bound(s.begin(), s.end(), v);
            if (it == s.end() || *it != v) continue;
            Simplex face;
            face.reserve(s.size() - 1);
            for (int w : s)
                if (w != v) face.push_back(w);
            r.simplices[d - 1].push_back(face);
        }
    return r;
}

// Closed star of v: simplices containing v together with all their faces.
inline SimplicialComplex star(const SimplicialComplex& x, int v) {
    SimplicialComplex lk = link(x, v);
    SimplicialComplex r(x.max_dim);
    r.simplices[0].push_back({v});
    for (int d = 0; d <= lk.max_dim; ++d)
        for (auto& s : lk.simplices[d]) {
            r.simplices[d].push_back(s);
            Simplex with_v(s);
            with_v.insert(std::lower_bound(with_v.begin(), with_v.end(), v), v);
            r.simplices[d + 1].push_back(with_v);
        }
    r.sort_all();
    return r;
}

// 1-skeleton of the octahedral q-sphere: vertices 1..2(q+1), vertex i opposite
// i + (q+1), all pairs adjacent except opposites.
inline SimpleGraph octahedral_sphere_graph(int q) {
    if (q < 0) throw std::invalid_argument("octahedral_sphere: q must be >= 0");
    int n = 2 * (q + 1);
    SimpleGraph g;
    g.num_nodes = n;
    g.adj.assign(n + 1, {});
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (v - u != q + 1) {
                g.adj[u].push_back(v);
                g.adj[v].push_back(u);
            }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

inline SimplicialComplex octahedral_sphere(int q, int max_dim = -1) {
    if (max_dim < 0) max_dim = q + 1;
    return clique_complex(octahedral_sphere_graph(q), max_dim);
}

// Octahedral q-ball: cone over S^(q-1) with apex 2q+1 adjacent to everything.
inline SimplicialComplex octahedral_ball(int q, int max_dim = -1) {
    if (q < 0) throw std::invalid_argument("octahedral_ball: q must be >= 0");
    if (max_dim < 0) max_dim = q + 1;
    if (q == 0) {
        SimplicialComplex x(max_dim);
        x.simplices[0].push_back({1});
        return x;
    }
    SimpleGraph base = octahedral_sphere_graph(q - 1);
    SimpleGraph g;
    g.num_nodes = base.num_nodes + 1;
    g.adj.assign(g.num_nodes + 1, {});
    int apex = g.num_nodes;
    for (int v = 1; v < apex; ++v) {
        g.adj[v] = base.adj[v];
        g.adj[v].push_back(apex);
        g.adj[apex].push_back(v);
    }
    return clique_complex(g, max_dim);
}

// The octahedron skeleton is the complete multipartite graph with q+1 parts of
// size 2, so a flag complex matches S^q exactly when every vertex has exactly
// one non-neighbor among the other vertices.
inline bool matches_octahedral_sphere(const SimplicialComplex& x, int q) {
    std::vector<int> vs = x.vertices();
    if ((int)vs.size() != 2 * (q + 1)) return false;
    std::set<std::pair<int, int>> edges;
    if (x.max_dim >= 1)
        for (auto& e : x.simplices[1]) edges.insert({e[0], e[1]});
    for (int u : vs) {
        int non_neighbors = 0;
        for (int v : vs)
            if (v != u && !edges.count({std::min(u, v), std::max(u, v)})) ++non_neighbors;
        if (non_neighbors != 1) return false;
    }
    return true;
}

// Same test on an induced subgraph, used for probing candidate spheres.
inline bool induced_is_octahedral_sphere(const SimpleGraph& g, const std::vector<int>& vs, int q) {
    if ((int)vs.size() != 2 * (q + 1)) return false;
    for (int u : vs) {
        int non_neighbors = 0;
        for (int v : vs)
            if (v != u && !g.adjacent(u, v)) ++non_neighbors;
        if (non_neighbors != 1) return false;
    }
    return true;
}

inline bool is_face_closed(const SimplicialComplex& x) {
    for (int d = 1; d <= x.max_dim; ++d)
        for (auto& s : x.simplices[d]) {
            Simplex face(s.size() - 1);
            for (std::size_t skip = 0; skip < s.size(); ++skip) {
                std::size_t j = 0;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != skip) face[j++] = s[i];
                if (!x.contains(face)) return false;
            }
        }
    return true;
}

// Flag property relative to the complex's own 1-skeleton.
inline bool is_flag(const SimplicialComplex& x) {
    std::set<std::pair<int, int>> edges;
    if (x.max_dim >= 1)
        for (auto& e : x.simplices[1]) edges.insert({e[0], e[1]});
    std::vector<int> vs = x.vertices();
    // every clique of size <= max_dim + 1 must be present
    std::vector<Simplex> cliques;
    for (int v : vs) cliques.push_back({v});
    for (int d = 1; d <= x.max_dim; ++d) {
        std::vector<Simplex> next;
        for (auto& c : cliques)
            for (int v : vs) {
                if (v <= c.back()) continue;
                bool ok = true;
                for (int u : c)
                    if (!edges.count({u, v})) { ok = false; break; }
                if (ok) {
                    Simplex e(c);
                    e.push_back(v);
                    next.push_back(e);
                }
            }
        for (auto& c : next)
            if (!x.contains(c)) return false;
        if ((int)x.simplices[d].size() != (int)next.size()) return false;
        cliques = std::move(next);
    }
    return true;
}

// Text serialization: header `flag-complex v1 max_dim=<d>`, then one simplex
// per line, dimension-sorted.
inline void write_complex(std::ostream& os, const SimplicialComplex& x) {
    os << "flag-complex v1 max_dim=" << x.max_dim << '\n';
    for (int d = 0; d <= x.max_dim; ++d)
        for (auto& s : x.simplices[d]) {
            for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
            os << '\n';
        }
}

inline SimplicialComplex read_complex(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("read_complex: empty input");
    std::istringstream hs(header);
    std::string tag, version, dim_field;
    hs >> tag >> version >> dim_field;
    if (tag != "flag-complex" || version != "v1" || dim_field.rfind("max_dim=", 0) != 0)
        throw std::runtime_error("read_complex: bad header");
    int cap = std::stoi(dim_field.substr(8));
    SimplicialComplex x(cap);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Simplex s;
        int v;
        while (ls >> v) s.push_back(v);
        int d = (int)s.size() - 1;
        if (d < 0 || d > cap || !std::is_sorted(s.begin(), s.end()))
            throw std::runtime_error("read_complex: bad simplex line");
        x.simplices[d].push_back(s);
    }
    x.sort_all();
    return x;
}

}  // namespace pacc
