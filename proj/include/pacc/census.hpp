#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pacc/pa_graph.hpp"
#include "pacc/theory.hpp"

namespace pacc {

namespace detail {

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

// Count of copies of p in g as a sub-multigraph: pattern ranks map to graph
// nodes in increasing index order, and a pattern multi-edge of multiplicity k
// picks k of the parallel edges of the image pair, contributing C(mult, k)
// copies. Ranked patterns have trivial order-preserving automorphism groups.
inline long long count_pattern(const MultiDiGraph& g, const PatternGraph& p) {
    p.validate();
    if (p.n > 8) throw std::invalid_argument("count_pattern: pattern too large (> 8 vertices)");
    if (p.n == 0) return 1;

    // edges grouped by their later endpoint, checked as soon as it is assigned
    std::vector<std::vector<std::pair<int, int>>> checks(p.n + 1);  // [k] = (earlier rank, mult)
    for (auto& [s, t, mult] : p.edges) checks[s].push_back({t, mult});

    long long count = 0;
    std::vector<int> assign(p.n + 1, 0);
    auto rec = [&](auto&& self, int k, long long ways) -> void {
        if (k > p.n) {
            count += ways;
            return;
        }
        for (int v = assign[k - 1] + 1; v <= g.num_nodes; ++v) {
            long long w = ways;
            for (auto& [earlier, mult] : checks[k]) {
                w *= detail::binomial(g.multiplicity(v, assign[earlier]), mult);
                if (w == 0) break;
            }
            if (w == 0) continue;
            assign[k] = v;
            self(self, k + 1, w);
        }
    };
    rec(rec, 1, 1);
    return count;
}

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Least-squares fit of log(count) against log(T); zero counts are filtered.
inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& series) {
    std::vector<std::pair<double, double>> pts;
    for (auto& [T, c] : series)
        if (c > 0.0) pts.push_back({std::log(T), std::log(c)});
    if (pts.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 points with positive counts");

    double n = (double)pts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_exponent: degenerate abscissae");
    ExponentFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (auto& [x, y] : pts) {
        double e = y - (f.slope * x + f.intercept);
        ss_res += e * e;
        ss_tot += (y - ybar) * (y - ybar);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

struct CensusResult {
    PatternGraph pattern;
    std::vector<std::pair<double, double>> counts;  // (T, count)
    ExponentFit fit;
    Rat predicted_A{0};     // T-exponent from the count sequence
    int predicted_r = 1;    // maximizer multiplicity (log power)
};

}  // namespace pacc
