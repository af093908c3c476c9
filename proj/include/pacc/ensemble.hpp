#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pacc/census.hpp"
#include "pacc/estimators.hpp"
#include "pacc/pa_graph.hpp"
#include "pacc/theory.hpp"

namespace pacc {

enum class EstimatorMode { Exact, Hatted, Both };

struct ExperimentConfig {
    int T = 2000;
    int m = 7;
    std::string delta = "-5";  // rational or decimal text, kept exact for theory
    int q = 2;
    int replicates = 50;
    std::uint64_t master_seed = 1;
    int checkpoints_per_decade = 20;
    EstimatorMode mode = EstimatorMode::Both;
    int exact_cap = 2000;
    int probe_prefix = 20;
    int mom_blocks = 10;
    int threads = 0;  // 0 = hardware concurrency
    std::string output_dir = "out";

    Rat delta_rational() const { return parse_rational(delta); }
    double delta_value() const { return to_double(delta_rational()); }

    void validate() const {
        if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
        if (mom_blocks < 1) throw std::invalid_argument("config: mom_blocks must be >= 1");
        if (checkpoints_per_decade < 1)
            throw std::invalid_argument("config: checkpoints_per_decade must be >= 1");
        PAParams{T, m, delta_value(), 0}.validate();
    }
};

inline EstimatorMode parse_mode(const std::string& s) {
    if (s == "exact") return EstimatorMode::Exact;
    if (s == "hatted") return EstimatorMode::Hatted;
    if (s == "both") return EstimatorMode::Both;
    throw std::invalid_argument("estimator mode must be exact, hatted or both");
}

inline const char* mode_name(EstimatorMode m) {
    switch (m) {
        case EstimatorMode::Exact: return "exact";
        case EstimatorMode::Hatted: return "hatted";
        case EstimatorMode::Both: return "both";
    }
    return "?";
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("T")) c.T = j.at("T").get<int>();
    if (j.contains("m")) c.m = j.at("m").get<int>();
    if (j.contains("delta")) {
        if (j.at("delta").is_string()) c.delta = j.at("delta").get<std::string>();
        else {
            std::ostringstream os;
            os << j.at("delta").get<double>();
            c.delta = os.str();
        }
    }
    if (j.contains("q")) c.q = j.at("q").get<int>();
    if (j.contains("replicates")) c.replicates = j.at("replicates").get<int>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("checkpoints_per_decade"))
        c.checkpoints_per_decade = j.at("checkpoints_per_decade").get<int>();
    if (j.contains("estimator_mode")) c.mode = parse_mode(j.at("estimator_mode").get<std::string>());
    if (j.contains("exact_cap")) c.exact_cap = j.at("exact_cap").get<int>();
    if (j.contains("probe_prefix")) c.probe_prefix = j.at("probe_prefix").get<int>();
    if (j.contains("mom_blocks")) c.mom_blocks = j.at("mom_blocks").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    return c;
}

// Per-replicate seed derivation (splitmix64 over master_seed + index).
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t i) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct CurvePoint {
    int t = 0;
    double mean_betti = 0, mom_betti = 0, se_betti = 0;
    double mean_upper = 0, mom_upper = 0, se_upper = 0;
    double mean_lower = 0, mom_lower = 0, se_lower = 0;
    std::optional<double> mean_lower_exact;
};

struct EnsembleSummary {
    ExperimentConfig config;
    std::vector<int> checkpoints;
    std::vector<CurvePoint> curve;
    std::optional<double> tail_slope;  // mean Betti slope over the last decade
};

inline double mean_of(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / double(xs.size());
}

inline double stderr_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mu = mean_of(xs), ss = 0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
}

// Median of block means; trailing remainder replicates are dropped.
inline double median_of_means(const std::vector<double>& xs, int blocks) {
    int block_size = (int)xs.size() / blocks;
    if (block_size < 1) return mean_of(xs);
    std::vector<double> block_means;
    for (int b = 0; b < blocks; ++b) {
        double s = 0;
        for (int i = 0; i < block_size; ++i) s += xs[b * block_size + i];
        block_means.push_back(s / block_size);
    }
    std::sort(block_means.begin(), block_means.end());
    int k = (int)block_means.size();
    return k % 2 ? block_means[k / 2] : 0.5 * (block_means[k / 2 - 1] + block_means[k / 2]);
}

inline LinkTrace replicate_trace(const ExperimentConfig& cfg, int replicate,
                                 const std::vector<int>& checkpoints) {
    PAParams params{cfg.T, cfg.m, cfg.delta_value(), mix_seed(cfg.master_seed, replicate)};
    SimpleGraph g = simplify(generate(params));
    TraceOptions opts;
    opts.q = cfg.q;
    opts.checkpoints = checkpoints;
    opts.probe_prefix = cfg.probe_prefix;
    opts.exact_cap = cfg.exact_cap;
    opts.compute_exact = cfg.mode != EstimatorMode::Hatted;
    opts.compute_hatted = cfg.mode != EstimatorMode::Exact;
    return compute_trace(g, opts);
}

// Runs all replicates (thread pool over replicate indices), writes one CSV per
// replicate into output_dir, and aggregates the checkpointed curves. Output is
// indexed by replicate, so it does not depend on the thread schedule.
inline EnsembleSummary run_ensemble(const ExperimentConfig& cfg, bool write_traces = true) {
    cfg.validate();
    std::vector<int> checkpoints = geometric_checkpoints(cfg.T, cfg.checkpoints_per_decade);

    std::vector<LinkTrace> traces(cfg.replicates);
    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min(nthreads, cfg.replicates);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < cfg.replicates; i = next.fetch_add(1))
            traces[i] = replicate_trace(cfg, i, checkpoints);
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    if (write_traces) {
        std::filesystem::create_directories(cfg.output_dir);
        for (int i = 0; i < cfg.replicates; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "trace_%04d.csv", i);
            std::ofstream os(std::filesystem::path(cfg.output_dir) / name);
            if (!os) throw std::runtime_error("run_ensemble: cannot write trace CSV");
            write_trace_csv(os, traces[i]);
        }
    }

    EnsembleSummary summary;
    summary.config = cfg;
    summary.checkpoints = checkpoints;
    bool any_exact = !traces.empty() && traces[0].has_exact;
    for (int t : checkpoints) {
        std::vector<double> b, up, lo, loe;
        for (auto& tr : traces) {
            const LinkTraceRow& row = tr.rows[t - 1];
            if (!row.betti_checkpoint)
                throw std::runtime_error("run_ensemble: missing checkpoint value");
            b.push_back(double(*row.betti_checkpoint));
            up.push_back(double(row.upper));
            lo.push_back(double(tr.has_hatted ? row.lower : row.lower_exact));
            if (any_exact) loe.push_back(double(row.lower_exact));
        }
        CurvePoint pt;
        pt.t = t;
        pt.mean_betti = mean_of(b);
        pt.mom_betti = median_of_means(b, cfg.mom_blocks);
        pt.se_betti = stderr_of(b);
        pt.mean_upper = mean_of(up);
        pt.mom_upper = median_of_means(up, cfg.mom_blocks);
        pt.se_upper = stderr_of(up);
        pt.mean_lower = mean_of(lo);
        pt.mom_lower = median_of_means(lo, cfg.mom_blocks);
        pt.se_lower = stderr_of(lo);
        if (any_exact) pt.mean_lower_exact = mean_of(loe);
        summary.curve.push_back(pt);
    }

    // slope of the mean Betti curve over the last decade of checkpoints
    std::vector<std::pair<double, double>> tail;
    for (auto& pt : summary.curve)
        if (pt.t * 10 >= cfg.T) tail.push_back({double(pt.t), pt.mean_betti});
    try {
        summary.tail_slope = fit_exponent(tail).slope;
    } catch (const std::invalid_argument&) {
        summary.tail_slope = std::nullopt;
    }
    return summary;
}

inline void write_summary_csv(std::ostream& os, const EnsembleSummary& s) {
    os << "# pacc ensemble: T=" << s.config.T << " m=" << s.config.m
       << " delta=" << s.config.delta << " q=" << s.config.q
       << " replicates=" << s.config.replicates << " master_seed=" << s.config.master_seed
       << " mode=" << mode_name(s.config.mode) << '\n';
    os << "t,mean_betti,mom_betti,se_betti,mean_upper,mom_upper,se_upper,"
          "mean_lower,mom_lower,se_lower,mean_lower_exact\n";
    for (auto& pt : s.curve) {
        os << pt.t << ',' << pt.mean_betti << ',' << pt.mom_betti << ',' << pt.se_betti << ','
           << pt.mean_upper << ',' << pt.mom_upper << ',' << pt.se_upper << ',' << pt.mean_lower
           << ',' << pt.mom_lower << ',' << pt.se_lower << ',';
        if (pt.mean_lower_exact) os << *pt.mean_lower_exact;
        os << '\n';
    }
}

inline EnsembleSummary read_summary_csv(std::istream& is) {
    EnsembleSummary s;
    std::string line;
    if (!std::getline(is, line) || line.rfind("# pacc ensemble:", 0) != 0)
        throw std::runtime_error("read_summary_csv: bad header");
    std::istringstream hs(line.substr(16));
    std::string field;
    while (hs >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "T") s.config.T = std::stoi(val);
        else if (key == "m") s.config.m = std::stoi(val);
        else if (key == "delta") s.config.delta = val;
        else if (key == "q") s.config.q = std::stoi(val);
        else if (key == "replicates") s.config.replicates = std::stoi(val);
        else if (key == "master_seed") s.config.master_seed = std::stoull(val);
        else if (key == "mode") s.config.mode = parse_mode(val);
    }
    if (!std::getline(is, line)) throw std::runtime_error("read_summary_csv: missing columns");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        CurvePoint pt;
        ls >> pt.t >> pt.mean_betti >> pt.mom_betti >> pt.se_betti >> pt.mean_upper >>
            pt.mom_upper >> pt.se_upper >> pt.mean_lower >> pt.mom_lower >> pt.se_lower;
        double loe;
        if (ls >> loe) pt.mean_lower_exact = loe;
        s.checkpoints.push_back(pt.t);
        s.curve.push_back(pt);
    }
    return s;
}

// Plot-data emission: log-log CSV of the mean curves, a reference band file
// with the theoretical slope, and a small static SVG chart.
inline void report(const EnsembleSummary& s, const std::string& out_dir, bool emit_svg = true) {
    if (s.curve.empty()) throw std::invalid_argument("report: empty summary");
    std::filesystem::create_directories(out_dir);
    std::filesystem::path dir(out_dir);

    {
        std::ofstream os(dir / "loglog.csv");
        os << "log10_t,log10_mean_betti,log10_mean_upper,log10_mean_lower\n";
        auto safe_log = [](double x) { return x > 0 ? std::log10(x) : std::nan(""); };
        for (auto& pt : s.curve)
            os << std::log10(double(pt.t)) << ',' << safe_log(pt.mean_betti) << ','
               << safe_log(pt.mean_upper) << ',' << safe_log(pt.mean_lower) << '\n';
    }
    {
        GrowthPrediction pred = regime(s.config.q, parse_rational(s.config.delta), s.config.m);
        std::ofstream os(dir / "band.txt");
        os << "regime " << regime_name(pred.regime) << '\n';
        os << "slope " << pred.exponent.numerator() << '/' << pred.exponent.denominator() << " = "
           << to_double(pred.exponent) << '\n';
        if (s.tail_slope) os << "fitted_tail_slope " << *s.tail_slope << '\n';
    }
    if (emit_svg) {
        std::ofstream os(dir / "chart.svg");
        const int W = 640, H = 480, pad = 48;
        double xmin = std::log10(double(s.curve.front().t));
        double xmax = std::log10(double(s.curve.back().t));
        double ymin = 1e300, ymax = -1e300;
        auto consider = [&](double v) {
            if (v > 0) {
                ymin = std::min(ymin, std::log10(v));
                ymax = std::max(ymax, std::log10(v));
            }
        };
        for (auto& pt : s.curve) {
            consider(pt.mean_betti);
            consider(pt.mean_upper);
            consider(pt.mean_lower);
        }
        if (ymin > ymax) { ymin = 0; ymax = 1; }
        if (ymax - ymin < 1e-9) ymax = ymin + 1;
        auto sx = [&](double t) {
            return pad + (std::log10(t) - xmin) / (xmax - xmin) * (W - 2 * pad);
        };
        auto sy = [&](double v) {
            return H - pad - (std::log10(v) - ymin) / (ymax - ymin) * (H - 2 * pad);
        };
        os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
           << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
        auto polyline = [&](auto value, const char* color) {
            os << "<polyline fill='none' stroke='" << color << "' points='";
            for (auto& pt : s.curve) {
                double v = value(pt);
                if (v > 0) os << sx(double(pt.t)) << ',' << sy(v) << ' ';
            }
            os << "'/>\n";
        };
        polyline([](const CurvePoint& p) { return p.mean_upper; }, "#888888");
        polyline([](const CurvePoint& p) { return p.mean_lower; }, "#bbbbbb");
        polyline([](const CurvePoint& p) { return p.mean_betti; }, "#000000");
        os << "<text x='" << pad << "' y='" << pad / 2
           << "' font-size='12'>mean Betti (black), upper (dark grey), lower (light grey), "
              "log-log</text>\n</svg>\n";
    }
}

}  // namespace pacc
