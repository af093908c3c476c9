#pragma once

#include <algorithm>
#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pacc {

using Rat = boost::rational<long long>;

// Parse "-5", "4/5" or "-2.5" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long num = std::stoll(s.substr(0, slash));
        long long den = std::stoll(s.substr(slash + 1));
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rat(std::stoll(digits), den);
    }
    return Rat(std::stoll(s));
}

inline double to_double(const Rat& r) {
    return double(r.numerator()) / double(r.denominator());
}

// chi(delta, m) = 1 - 1/(2 + delta/m) = (m + delta) / (2m + delta)
inline Rat chi(const Rat& delta, int m) {
    if (!(delta > Rat(-m))) throw std::invalid_argument("chi: delta must be > -m");
    return (Rat(m) + delta) / (Rat(2 * m) + delta);
}

inline double chi(double delta, int m) {
    if (!(delta > -double(m))) throw std::invalid_argument("chi: delta must be > -m");
    return (m + delta) / (2.0 * m + delta);
}

// Small ordered directed multigraph: vertices are ranks 1..n, edges point from
// later to earlier ranks.
struct PatternGraph {
    int n = 0;
    std::vector<std::tuple<int, int, int>> edges;  // (source, target, mult), source > target

    void validate() const {
        for (auto& [s, t, mult] : edges)
            if (s <= t || t < 1 || s > n || mult < 1)
                throw std::invalid_argument("PatternGraph: edges must satisfy source > target >= 1");
    }

    std::vector<int> in_degrees() const {
        std::vector<int> d(n + 1, 0);
        for (auto& [s, t, mult] : edges) d[t] += mult;
        return d;
    }

    std::vector<int> out_degrees() const {
        std::vector<int> d(n + 1, 0);
        for (auto& [s, t, mult] : edges) d[s] += mult;
        return d;
    }
};

// p_Gamma(v) = -[(1 - chi) d_in + chi d_out]
inline Rat power(const PatternGraph& p, int v, const Rat& delta, int m) {
    if (v < 1 || v > p.n) throw std::invalid_argument("power: vertex not in pattern");
    Rat x = chi(delta, m);
    return -((Rat(1) - x) * Rat(p.in_degrees()[v]) + x * Rat(p.out_degrees()[v]));
}

struct CountSequence {
    std::vector<Rat> a;  // a_0 .. a_n
    Rat A;               // max of the sequence
    int r = 0;           // number of maximizers
};

// a_k = n - k + sum_{l > k} p(v_l); expected pattern count is Theta(T^A log^{r-1} T).
inline CountSequence count_sequence(const PatternGraph& p, const Rat& delta, int m) {
    p.validate();
    for (int d : p.out_degrees())
        if (d > m) throw std::invalid_argument("count_sequence: out-degree exceeds m");
    std::vector<Rat> pw(p.n + 1);
    for (int v = 1; v <= p.n; ++v) pw[v] = power(p, v, delta, m);

    CountSequence cs;
    cs.a.resize(p.n + 1);
    Rat tail(0);
    cs.a[p.n] = Rat(0);
    for (int k = p.n - 1; k >= 0; --k) {
        tail += pw[k + 1];
        cs.a[k] = Rat(p.n - k) + tail;
    }
    cs.A = *std::max_element(cs.a.begin(), cs.a.end());
    cs.r = (int)std::count(cs.a.begin(), cs.a.end(), cs.A);
    return cs;
}

// Exponents of the containment probability Theta(prod v^{p(v)}) for a pattern
// with concrete node labels.
inline std::vector<std::pair<int, Rat>> containment_exponents(const PatternGraph& p,
                                                              const std::vector<int>& labels,
                                                              const Rat& delta, int m) {
    if ((int)labels.size() != p.n)
        throw std::invalid_argument("containment_exponents: label count mismatch");
    if (!std::is_sorted(labels.begin(), labels.end()))
        throw std::invalid_argument("containment_exponents: labels must be increasing");
    std::vector<std::pair<int, Rat>> out;
    for (int v = 1; v <= p.n; ++v) out.push_back({labels[v - 1], power(p, v, delta, m)});
    return out;
}

enum class Regime { PowerLaw, Logarithmic, Bounded, Zero };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::PowerLaw: return "power-law";
        case Regime::Logarithmic: return "logarithmic";
        case Regime::Bounded: return "bounded";
        case Regime::Zero: return "zero";
    }
    return "?";
}

struct GrowthPrediction {
    Rat exponent{0};
    int log_power = 0;
    Regime regime = Regime::Bounded;
};

// Growth regime of E[beta_q(X(T, delta, m))].
inline GrowthPrediction regime(int q, const Rat& delta, int m) {
    if (q < 0) throw std::invalid_argument("regime: q must be >= 0");
    GrowthPrediction g;
    if (q == 0) {
        g.regime = Regime::Bounded;  // beta_0 == 1
        return g;
    }
    if (q == 1) {
        g.regime = Regime::PowerLaw;  // (m-1) T + o(T)
        g.exponent = Rat(1);
        return g;
    }
    if (m < 2 * q) {
        g.regime = Regime::Zero;  // beta_q == 0
        return g;
    }
    Rat e = Rat(1) - Rat(2 * q) * chi(delta, m);
    g.exponent = e;
    if (e > Rat(0)) g.regime = Regime::PowerLaw;
    else if (e == Rat(0)) { g.regime = Regime::Logarithmic; g.log_power = 1; }
    else g.regime = Regime::Bounded;
    return g;
}

// -delta/m value where the dimension-q exponent crosses zero.
inline Rat phase_threshold(int q) {
    if (q < 2) throw std::invalid_argument("phase_threshold: q must be >= 2");
    return Rat(2 * q - 2, 2 * q - 1);
}

// Pattern input format: header `pattern v=<n>`, lines `i j mult` with i > j.
inline void write_pattern(std::ostream& os, const PatternGraph& p) {
    os << "pattern v=" << p.n << '\n';
    for (auto& [s, t, mult] : p.edges) os << s << ' ' << t << ' ' << mult << '\n';
}

inline PatternGraph read_pattern(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("read_pattern: empty input");
    std::istringstream hs(header);
    std::string tag, vfield;
    hs >> tag >> vfield;
    if (tag != "pattern" || vfield.rfind("v=", 0) != 0)
        throw std::runtime_error("read_pattern: bad header");
    PatternGraph p;
    p.n = std::stoi(vfield.substr(2));
    int s, t, mult;
    while (is >> s >> t >> mult) p.edges.push_back({s, t, mult});
    p.validate();
    return p;
}

}  // namespace pacc
