#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "pacc/homology.hpp"
#include "pacc/pa_graph.hpp"
#include "pacc/simplicial_complex.hpp"

namespace pacc {

// L^(t): link of vertex t in X^(t), built directly as the flag complex of the
// induced graph on the earlier neighbors of t.
inline SimplicialComplex link_at(const SimpleGraph& g, int t, int max_dim) {
    std::vector<int> nbrs;
    if (t >= 1 && t <= g.num_nodes)
        for (int v : g.adj[t])
            if (v < t) nbrs.push_back(v);
    return clique_complex_induced(g, nbrs, max_dim);
}

inline SimplicialComplex link_at(const SimplicialComplex& x, int t) {
    return link(prefix(x, t), t);
}

inline std::pair<int, int> u_and_bKL(const SimpleGraph& g, int t, int q) {
    SimplicialComplex lk = link_at(g, t, q + 1);
    return {betti(lk, q - 1), betti(lk, q)};
}

// The event (S^q)^(t): X^(2q) is an octahedral (q-1)-sphere, vertex 2q+1 cones
// over it, and the link of t contains it.
inline int event_S(const SimpleGraph& g, int t, int q) {
    if (t < 2 * q + 2) return 0;
    std::vector<int> first(2 * q);
    for (int v = 1; v <= 2 * q; ++v) first[v - 1] = v;
    if (!induced_is_octahedral_sphere(g, first, q - 1)) return 0;
    for (int v = 1; v <= 2 * q; ++v)
        if (!g.adjacent(2 * q + 1, v)) return 0;
    for (int v = 1; v <= 2 * q; ++v)
        if (!g.adjacent(t, v)) return 0;
    return 1;
}

inline int b_IK(const SimpleGraph& g, int t, int q) {
    if (!event_S(g, t, q)) return 0;
    SimplicialComplex lk = link_at(g, t, q + 1);
    std::vector<int> first(2 * q);
    for (int v = 1; v <= 2 * q; ++v) first[v - 1] = v;
    SimplicialComplex x2q = clique_complex_induced(g, first, q + 1);
    return relative_betti(lk, x2q, q) > 0 ? 1 : 0;
}

// Anchor sphere for the hatted estimators: the lexicographically smallest
// 2q-vertex subset of the probe prefix that induces an octahedral (q-1)-sphere.
inline std::optional<std::vector<int>> find_anchor_sphere(const SimpleGraph& g, int q,
                                                          int probe_prefix = 20) {
    int n = std::min(probe_prefix, g.num_nodes);
    int k = 2 * q;
    if (k <= 0 || k > n) return std::nullopt;
    std::vector<int> pick(k);
    std::optional<std::vector<int>> found;
    // lexicographic subset enumeration; first hit wins
    auto rec = [&](auto&& self, int depth, int next) -> bool {
        if (depth == k) {
            if (induced_is_octahedral_sphere(g, pick, q - 1)) {
                found = pick;
                return true;
            }
            return false;
        }
        for (int v = next; v <= n - (k - depth - 1); ++v) {
            pick[depth] = v;
            if (self(self, depth + 1, v + 1)) return true;
        }
        return false;
    };
    rec(rec, 0, 1);
    return found;
}

// Smallest node outside the anchor adjacent to every anchor vertex, if any.
inline std::optional<int> first_cone_point(const SimpleGraph& g, const std::vector<int>& anchor) {
    for (int v = 1; v <= g.num_nodes; ++v) {
        if (std::find(anchor.begin(), anchor.end(), v) != anchor.end()) continue;
        bool all = true;
        for (int w : anchor)
            if (!g.adjacent(v, w)) { all = false; break; }
        if (all) return v;
    }
    return std::nullopt;
}

inline int event_S_hat(const SimpleGraph& g, int t, int q, const std::vector<int>& anchor,
                       int probe_prefix = 20) {
    if (t <= probe_prefix) return 0;
    for (int w : anchor)
        if (!g.adjacent(t, w)) return 0;
    std::optional<int> first = first_cone_point(g, anchor);
    return (first && *first < t) ? 1 : 0;
}

struct TraceOptions {
    int q = 2;
    std::vector<int> checkpoints;
    int probe_prefix = 20;
    bool compute_exact = true;
    bool compute_hatted = true;
    int exact_cap = 2000;  // exact estimators skipped when T exceeds this
};

struct LinkTraceRow {
    int t = 0;
    int u = 0;
    int bKL = 0;
    int ell = 0;
    int bIK = 0;
    int ell_hat = 0;
    int bIK_hat = 0;
    long long upper = 0;       // prefix sum of u
    long long lower = 0;       // prefix sum of ell_hat - bIK_hat - bKL
    long long lower_exact = 0; // prefix sum of ell - bIK - bKL
    std::optional<int> betti_checkpoint;
};

struct LinkTrace {
    int q = 0;
    bool has_exact = false;
    bool has_hatted = false;
    std::vector<LinkTraceRow> rows;
};

inline LinkTrace compute_trace(const SimpleGraph& g, const TraceOptions& opts) {
    const int q = opts.q;
    const int T = g.num_nodes;
    LinkTrace trace;
    trace.q = q;
    trace.has_exact = opts.compute_exact && T <= opts.exact_cap;
    trace.has_hatted = opts.compute_hatted;
    trace.rows.reserve(T);

    std::optional<std::vector<int>> anchor;
    if (trace.has_hatted) anchor = find_anchor_sphere(g, q, opts.probe_prefix);

    std::vector<int> first(2 * q);
    for (int v = 1; v <= 2 * q; ++v) first[v - 1] = v;
    SimplicialComplex x2q;
    SimplicialComplex anchor_complex;
    bool exact_base = false;
    if (trace.has_exact && T >= 2 * q + 1) {
        exact_base = induced_is_octahedral_sphere(g, first, q - 1);
        if (exact_base)
            for (int v = 1; v <= 2 * q; ++v)
                if (!g.adjacent(2 * q + 1, v)) { exact_base = false; break; }
        if (exact_base) x2q = clique_complex_induced(g, first, q + 1);
    }
    if (anchor) anchor_complex = clique_complex_induced(g, *anchor, q + 1);

    std::vector<int> checkpoints(opts.checkpoints);
    std::sort(checkpoints.begin(), checkpoints.end());

    long long upper = 0, lower = 0, lower_exact = 0;
    std::size_t next_cp = 0;
    for (int t = 1; t <= T; ++t) {
        LinkTraceRow row;
        row.t = t;
        SimplicialComplex lk = link_at(g, t, q + 1);
        row.u = betti(lk, q - 1);
        row.bKL = betti(lk, q);

        if (trace.has_exact && exact_base && t >= 2 * q + 2) {
            bool adj_all = true;
            for (int v = 1; v <= 2 * q; ++v)
                if (!g.adjacent(t, v)) { adj_all = false; break; }
            if (adj_all) {
                row.ell = 1;
                row.bIK = relative_betti(lk, x2q, q) > 0 ? 1 : 0;
            }
        }

        if (anchor && t > opts.probe_prefix) {
            row.ell_hat = event_S_hat(g, t, q, *anchor, opts.probe_prefix);
            if (row.ell_hat) {
                InducedMapRanks jr = induced_map_ranks({lk, anchor_complex}, q - 1);
                row.bIK_hat = jr.kernel_rank == 1 ? 1 : 0;
            }
        }

        upper += row.u;
        lower += row.ell_hat - row.bIK_hat - row.bKL;
        lower_exact += row.ell - row.bIK - row.bKL;
        row.upper = upper;
        row.lower = lower;
        row.lower_exact = lower_exact;

        while (next_cp < checkpoints.size() && checkpoints[next_cp] < t) ++next_cp;
        if (next_cp < checkpoints.size() && checkpoints[next_cp] == t) {
            std::vector<int> pre(t);
            for (int v = 1; v <= t; ++v) pre[v - 1] = v;
            row.betti_checkpoint = betti(clique_complex_induced(g, pre, q + 1), q);
        }
        trace.rows.push_back(std::move(row));
    }
    return trace;
}

// Both sides of the Mayer-Vietoris step identity at node t:
// beta_q(X^(t)) - beta_q(X^(t-1)) = rk ker f_{q-1} - rk im f_q
// for the inclusion f: L^(t) -> X^(t-1).
inline std::pair<int, int> mv_increment(const SimpleGraph& g, int t, int q) {
    if (t < 2) throw std::invalid_argument("mv_increment: t must be >= 2");
    std::vector<int> pre(t);
    for (int v = 1; v <= t; ++v) pre[v - 1] = v;
    SimplicialComplex xt = clique_complex_induced(g, pre, q + 1);
    pre.pop_back();
    SimplicialComplex xtm1 = clique_complex_induced(g, pre, q + 1);
    int lhs = betti(xt, q) - betti(xtm1, q);

    SimplicialComplex lk = link_at(g, t, q + 1);
    TwoStepFiltration f{xtm1, lk};
    int ker_qm1 = induced_map_ranks(f, q - 1).kernel_rank;
    int im_q = induced_map_ranks(f, q).image_rank;
    return {lhs, ker_qm1 - im_q};
}

inline std::vector<std::pair<int, int>> betti_evolution(const SimpleGraph& g, int q,
                                                        const std::vector<int>& checkpoints) {
    std::vector<std::pair<int, int>> out;
    for (int t : checkpoints) {
        std::vector<int> pre(t);
        for (int v = 1; v <= t; ++v) pre[v - 1] = v;
        out.push_back({t, betti(clique_complex_induced(g, pre, q + 1), q)});
    }
    return out;
}

inline std::vector<std::pair<int, int>> betti_evolution(const MultiDiGraph& g, int q,
                                                        const std::vector<int>& checkpoints) {
    return betti_evolution(simplify(g), q, checkpoints);
}

// Geometric checkpoint schedule, per_decade points per decade, ending at T.
inline std::vector<int> geometric_checkpoints(int T, int per_decade = 20) {
    std::vector<int> cps;
    if (T < 1) return cps;
    for (int k = 0;; ++k) {
        int t = (int)std::llround(std::pow(10.0, 1.0 + double(k) / per_decade));
        if (t >= T) break;
        if (t >= 2 && (cps.empty() || t != cps.back())) cps.push_back(t);
    }
    if (cps.empty() || cps.back() != T) cps.push_back(T);
    return cps;
}

inline void write_trace_csv(std::ostream& os, const LinkTrace& trace) {
    os << "t,u,bKL,ell,bIK,ell_hat,bIK_hat,lower,upper,betti_checkpoint\n";
    for (auto& r : trace.rows) {
        os << r.t << ',' << r.u << ',' << r.bKL << ',';
        if (trace.has_exact) os << r.ell << ',' << r.bIK << ',';
        else os << ",,";
        if (trace.has_hatted) os << r.ell_hat << ',' << r.bIK_hat << ',';
        else os << ",,";
        os << r.lower << ',' << r.upper << ',';
        if (r.betti_checkpoint) os << *r.betti_checkpoint;
        os << '\n';
    }
}

}  // namespace pacc
