#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pacc/simplicial_complex.hpp"

namespace pacc {

// Sparse GF(2) column: sorted row indices of the nonzero entries.
using Gf2Col = std::vector<int>;

namespace gf2 {

inline void add_into(Gf2Col& a, const Gf2Col& b) {
    Gf2Col r;
    r.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    a.swap(r);
}

struct Reduction {
    int rank = 0;
    std::vector<int> pivot_rows;  // canonical: independent of column order
};

// Left-to-right column reduction with low-entry pairing.
inline Reduction reduce(std::vector<Gf2Col> cols) {
    Reduction result;
    std::unordered_map<int, int> pivot_col;  // low row -> column index
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Gf2Col& col = cols[j];
        while (!col.empty()) {
            auto it = pivot_col.find(col.back());
            if (it == pivot_col.end()) break;
            add_into(col, cols[it->second]);
        }
        if (!col.empty()) {
            pivot_col.emplace(col.back(), (int)j);
            result.pivot_rows.push_back(col.back());
            ++result.rank;
        }
    }
    std::sort(result.pivot_rows.begin(), result.pivot_rows.end());
    return result;
}

inline int rank(std::vector<Gf2Col> cols) { return reduce(std::move(cols)).rank; }

}  // namespace gf2

namespace detail {

// Index map for the d-simplices of x, optionally ordering the simplices of a
// subcomplex first (two-step filtration order; ties broken lexicographically).
struct SimplexIndex {
    std::map<Simplex, int> pos;
    int sub_count = 0;  // simplices of the subcomplex occupy indices [0, sub_count)
};

inline SimplexIndex index_simplices(const SimplicialComplex& x, int d,
                                    const SimplicialComplex* sub = nullptr) {
    SimplexIndex idx;
    int next = 0;
    if (sub && d <= sub->max_dim) {
        for (auto& s : sub->simplices[d]) idx.pos.emplace(s, next++);
        idx.sub_count = next;
    }
    if (d >= 0 && d <= x.max_dim)
        for (auto& s : x.simplices[d])
            if (!idx.pos.count(s)) idx.pos.emplace(s, next++);
    return idx;
}

// Boundary columns of the d-simplices listed in `level`, with rows indexed by
// `facet_index`. Facets absent from the index are dropped (relative homology).
inline std::vector<Gf2Col> boundary_columns(const std::vector<Simplex>& level,
                                            const SimplexIndex& facet_index) {
    std::vector<Gf2Col> cols;
    cols.reserve(level.size());
    Simplex face;
    for (auto& s : level) {
        Gf2Col col;
        face.resize(s.size() - 1);
        for (std::size_t skip = 0; skip < s.size(); ++skip) {
            std::size_t j = 0;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != skip) face[j++] = s[i];
            auto it = facet_index.pos.find(face);
            if (it != facet_index.pos.end()) col.push_back(it->second);
        }
        std::sort(col.begin(), col.end());
        cols.push_back(std::move(col));
    }
    return cols;
}

inline int boundary_rank(const SimplicialComplex& x, int d) {
    if (d < 1 || d > x.max_dim || x.simplices[d].empty()) return 0;
    SimplexIndex rows = index_simplices(x, d - 1);
    return gf2::rank(boundary_columns(x.simplices[d], rows));
}

}  // namespace detail

inline void require_dim_cap(const SimplicialComplex& x, int q, const char* op) {
    if (x.max_dim < q + 1 && !x.empty())
        throw std::invalid_argument(std::string(op) +
                                    ": complex not flag-complete through dimension q+1");
}

// Betti number over GF(2): n_q - rank d_q - rank d_{q+1}, with d_0 = 0.
inline int betti(const SimplicialComplex& x, int q) {
    if (q < 0) throw std::invalid_argument("betti: q must be >= 0");
    if (x.empty()) return 0;
    require_dim_cap(x, q, "betti");
    int n_q = x.count(q);
    if (n_q == 0) return 0;
    return n_q - detail::boundary_rank(x, q) - detail::boundary_rank(x, q + 1);
}

inline bool is_subcomplex(const SimplicialComplex& x, const SimplicialComplex& a) {
    for (int d = 0; d <= a.max_dim; ++d)
        for (auto& s : a.simplices[d])
            if (!x.contains(s)) return false;
    return true;
}

// Relative Betti number of the pair (x, a): quotient chain complex with the
// a-simplices deleted as generators.
inline int relative_betti(const SimplicialComplex& x, const SimplicialComplex& a, int q) {
    if (q < 0) throw std::invalid_argument("relative_betti: q must be >= 0");
    if (!is_subcomplex(x, a))
        throw std::invalid_argument("relative_betti: a is not a subcomplex of x");
    if (x.empty()) return 0;
    require_dim_cap(x, q, "relative_betti");

    auto rel_level = [&](int d) {
        std::vector<Simplex> out;
        if (d < 0 || d > x.max_dim) return out;
        for (auto& s : x.simplices[d])
            if (!a.contains(s)) out.push_back(s);
        return out;
    };
    auto rel_index = [&](int d) {
        detail::SimplexIndex idx;
        int next = 0;
        for (auto& s : rel_level(d)) idx.pos.emplace(s, next++);
        return idx;
    };

    std::vector<Simplex> level_q = rel_level(q);
    if (level_q.empty()) return 0;
    detail::SimplexIndex rows_qm1 = rel_index(q - 1);
    detail::SimplexIndex rows_q = rel_index(q);
    int rank_dq = q == 0 ? 0 : gf2::rank(detail::boundary_columns(level_q, rows_qm1));
    int rank_dq1 = gf2::rank(detail::boundary_columns(rel_level(q + 1), rows_q));
    return (int)level_q.size() - rank_dq - rank_dq1;
}

// A two-step filtration a <= x; simplices of a precede the rest.
struct TwoStepFiltration {
    SimplicialComplex total;
    SimplicialComplex sub;

    void validate() const {
        if (!is_subcomplex(total, sub))
            throw std::invalid_argument("TwoStepFiltration: sub is not a subcomplex");
    }
};

struct InducedMapRanks {
    int image_rank = 0;
    int kernel_rank = 0;
};

// Ranks of image and kernel of H_q(a) -> H_q(x), via two-step persistence:
// classes born in a survive to x exactly when no pivot of the reduced d_{q+1}
// of x lands on an a-row.
inline InducedMapRanks induced_map_ranks(const TwoStepFiltration& f, int q) {
    f.validate();
    const SimplicialComplex& x = f.total;
    const SimplicialComplex& a = f.sub;
    if (q < 0) throw std::invalid_argument("induced_map_ranks: q must be >= 0");
    require_dim_cap(x, q, "induced_map_ranks");

    int n_q_a = a.count(q);
    int rank_dq_a = detail::boundary_rank(a, q);
    int rank_dq1_a = detail::boundary_rank(a, q + 1);
    int betti_a = n_q_a - rank_dq_a - rank_dq1_a;
    int births_a = n_q_a - rank_dq_a;

    int deaths_in_a = 0;
    if (q + 1 <= x.max_dim && !x.simplices[q + 1].empty()) {
        detail::SimplexIndex rows = detail::index_simplices(x, q, &a);
        gf2::Reduction red = gf2::reduce(detail::boundary_columns(x.simplices[q + 1], rows));
        for (int r : red.pivot_rows)
            if (r < rows.sub_count) ++deaths_in_a;
    }

    InducedMapRanks r;
    r.image_rank = births_a - deaths_in_a;
    r.kernel_rank = betti_a - r.image_rank;
    return r;
}

inline long long euler_characteristic(const SimplicialComplex& x) {
    long long chi = 0;
    for (int d = 0; d <= x.max_dim; ++d) chi += (d % 2 == 0) ? x.count(d) : -x.count(d);
    return chi;
}

// Brute-force clique-minimality oracle (Def of (A,q)-clique-minimality):
// enumerate all clique subcomplexes of x containing a via edge subsets.
// Exponential; guarded for test-scale inputs. Requires q >= 1.
inline bool is_clique_minimal(const SimplicialComplex& x, const SimplicialComplex& a, int q,
                              int max_vertices = 9, int max_free_edges = 18) {
    if (q < 1) throw std::invalid_argument("is_clique_minimal: q must be >= 1");
    require_dim_cap(x, q, "is_clique_minimal");
    std::vector<int> vs = x.vertices();
    if ((int)vs.size() > max_vertices)
        throw std::invalid_argument("is_clique_minimal: vertex guard exceeded");

    std::vector<Simplex> free_edges;
    if (x.max_dim >= 1)
        for (auto& e : x.simplices[1])
            if (!a.contains(e)) free_edges.push_back(e);
    if ((int)free_edges.size() > max_free_edges)
        throw std::invalid_argument("is_clique_minimal: edge guard exceeded");

    // A vertex outside a incident to nothing never carries q-homology, so a
    // proper subcomplex dropping it would tie the full complex.
    std::vector<int> degree_in_x(vs.size(), 0);
    std::map<int, int> vpos;
    for (std::size_t i = 0; i < vs.size(); ++i) vpos[vs[i]] = (int)i;
    if (x.max_dim >= 1)
        for (auto& e : x.simplices[1]) {
            ++degree_in_x[vpos[e[0]]];
            ++degree_in_x[vpos[e[1]]];
        }
    if (relative_betti(x, a, q) <= 0) return false;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (degree_in_x[i] == 0 && !a.contains({vs[i]})) return false;

    SimpleGraph g;
    int n = vs.empty() ? 0 : *std::max_element(vs.begin(), vs.end());
    g.num_nodes = n;
    g.adj.assign(n + 1, {});
    std::vector<Simplex> a_edges;
    if (a.max_dim >= 1) a_edges = a.simplices[1];

    for (std::uint32_t mask = 0; mask + 1 < (1u << free_edges.size()); ++mask) {
        for (auto& adj : g.adj) adj.clear();
        auto add_edge = [&](const Simplex& e) {
            g.adj[e[0]].push_back(e[1]);
            g.adj[e[1]].push_back(e[0]);
        };
        for (auto& e : a_edges) add_edge(e);
        for (std::size_t i = 0; i < free_edges.size(); ++i)
            if (mask & (1u << i)) add_edge(free_edges[i]);
        for (auto& adj : g.adj) std::sort(adj.begin(), adj.end());
        SimplicialComplex y = clique_complex_induced(g, vs, std::max(x.max_dim, q + 1));
        if (relative_betti(y, a, q) > 0) return false;
    }
    return true;
}

}  // namespace pacc
