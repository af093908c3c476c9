#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pacc {

// Parameters of the affine preferential attachment model. Nodes are indexed
// from 1; node t > 2 sends m edges to earlier nodes, each target drawn with
// probability proportional to degree + delta.
struct PAParams {
    int T = 2;
    int m = 1;
    double delta = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (T < 2) throw std::invalid_argument("PAParams: T must be >= 2");
        if (m < 1) throw std::invalid_argument("PAParams: m must be >= 1");
        if (!(delta > -double(m)))
            throw std::invalid_argument("PAParams: delta must be > -m");
    }
};

// Directed multigraph with all edges pointing from later to earlier nodes.
// Edge groups are stored as (source, target, multiplicity) with source > target.
struct MultiDiGraph {
    int num_nodes = 0;
    std::vector<std::vector<std::pair<int, int>>> out;  // out[v] = (target, mult), sorted by target; index 0 unused
    std::vector<int> degree;                            // degree[v] = in + out, weighted by multiplicity; index 0 unused
    PAParams params;                                    // parameters used at generation time, if any

    int multiplicity(int source, int target) const {
        if (source < 1 || source > num_nodes) return 0;
        for (auto& [t, mult] : out[source])
            if (t == target) return mult;
        return 0;
    }

    long long total_multiplicity() const {
        long long s = 0;
        for (int v = 1; v <= num_nodes; ++v)
            for (auto& [t, mult] : out[v]) s += mult;
        return s;
    }
};

// Undirected simple graph; adjacency lists are sorted and duplicate-free.
struct SimpleGraph {
    int num_nodes = 0;
    std::vector<std::vector<int>> adj;  // index 0 unused

    bool adjacent(int u, int v) const {
        if (u < 1 || u > num_nodes) return false;
        return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }
};

// Fenwick tree over real-valued node weights, supporting point updates and
// inverse-CDF sampling with a single uniform draw.
class FenwickWeights {
public:
    explicit FenwickWeights(int capacity) : tree_(capacity + 1, 0.0) {}

    void add(int i, double w) {
        for (; i < (int)tree_.size(); i += i & -i) tree_[i] += w;
    }

    double prefix(int i) const {
        double s = 0.0;
        for (; i > 0; i -= i & -i) s += tree_[i];
        return s;
    }

    // Largest index i such that prefix(i-1) <= x < prefix(i), by binary
    // descent. x must lie in [0, total).
    int find(double x, int upper) const {
        int pos = 0;
        int log = 1;
        while ((2 << log) <= (int)tree_.size()) ++log;
        for (int step = 1 << log; step > 0; step >>= 1) {
            int next = pos + step;
            if (next < (int)tree_.size() && next <= upper && tree_[next] <= x) {
                pos = next;
                x -= tree_[next];
            }
        }
        int r = pos + 1;
        return r > upper ? upper : r;
    }

private:
    std::vector<double> tree_;
};

// Categorical distribution of Def-2.1 attachment for a mid-step state:
// candidate v gets mass (degree[v] + delta) / sum. degrees has one entry per
// candidate node (index 0 = node 1).
inline std::vector<double> attachment_distribution(const std::vector<int>& degrees, double delta) {
    if (degrees.empty())
        throw std::invalid_argument("attachment_distribution: no candidate targets");
    double total = 0.0;
    std::vector<double> p(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        p[i] = degrees[i] + delta;
        if (!(p[i] > 0.0))
            throw std::invalid_argument("attachment_distribution: nonpositive weight");
        total += p[i];
    }
    for (auto& x : p) x /= total;
    return p;
}

// One uniform draw in [0,1) per edge keeps replicates reproducible.
inline double next_unit(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

inline MultiDiGraph generate(const PAParams& params) {
    params.validate();
    const int T = params.T, m = params.m;
    const double delta = params.delta;

    MultiDiGraph g;
    g.num_nodes = T;
    g.params = params;
    g.out.assign(T + 1, {});
    g.degree.assign(T + 1, 0);

    // G(2): m parallel edges 2 -> 1.
    g.out[2] = {{1, m}};
    g.degree[1] = m;
    g.degree[2] = m;

    std::mt19937_64 rng(params.seed);
    FenwickWeights fw(T);
    fw.add(1, g.degree[1] + delta);
    fw.add(2, g.degree[2] + delta);
    double total = 2.0 * (m + delta);

    std::map<int, int> targets;
    for (int t = 3; t <= T; ++t) {
        targets.clear();
        for (int e = 0; e < m; ++e) {
            double x = next_unit(rng) * total;
            int v = fw.find(x, t - 1);
            ++targets[v];
            ++g.degree[v];
            fw.add(v, 1.0);
            total += 1.0;
        }
        g.out[t].assign(targets.begin(), targets.end());
        g.degree[t] = m;
        fw.add(t, double(m) + delta);
        total += double(m) + delta;
    }
    return g;
}

inline SimpleGraph simplify(const MultiDiGraph& g) {
    SimpleGraph s;
    s.num_nodes = g.num_nodes;
    s.adj.assign(g.num_nodes + 1, {});
    for (int v = 1; v <= g.num_nodes; ++v)
        for (auto& [t, mult] : g.out[v]) {
            s.adj[v].push_back(t);
            s.adj[t].push_back(v);
        }
    for (auto& a : s.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return s;
}

// Text edge-list serialization. Header: pa-graph v1 T m delta seed
inline void write_graph(std::ostream& os, const MultiDiGraph& g) {
    os << "pa-graph v1 " << g.params.T << ' ' << g.params.m << ' ';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", g.params.delta);
    os << buf << ' ' << g.params.seed << '\n';
    for (int v = 1; v <= g.num_nodes; ++v)
        for (auto& [t, mult] : g.out[v]) os << v << ' ' << t << ' ' << mult << '\n';
}

inline MultiDiGraph read_graph(std::istream& is) {
    std::string tag, version;
    MultiDiGraph g;
    if (!(is >> tag >> version) || tag != "pa-graph" || version != "v1")
        throw std::runtime_error("read_graph: bad header");
    is >> g.params.T >> g.params.m >> g.params.delta >> g.params.seed;
    if (!is) throw std::runtime_error("read_graph: bad header fields");
    g.num_nodes = g.params.T;
    g.out.assign(g.num_nodes + 1, {});
    g.degree.assign(g.num_nodes + 1, 0);
    int s, t, mult;
    while (is >> s >> t >> mult) {
        if (s <= t || t < 1 || s > g.num_nodes || mult < 1)
            throw std::runtime_error("read_graph: bad edge line");
        g.out[s].push_back({t, mult});
        g.degree[s] += mult;
        g.degree[t] += mult;
    }
    for (auto& o : g.out) std::sort(o.begin(), o.end());
    return g;
}

}  // namespace pacc
