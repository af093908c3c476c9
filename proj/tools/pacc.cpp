// Command-line front end: graph generation, Betti numbers, estimator traces,
// ensemble experiments, closed-form predictions, pattern censuses and plot
// emission.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pacc/census.hpp"
#include "pacc/ensemble.hpp"
#include "pacc/estimators.hpp"
#include "pacc/homology.hpp"
#include "pacc/pa_graph.hpp"
#include "pacc/simplicial_complex.hpp"
#include "pacc/theory.hpp"

namespace {

pacc::MultiDiGraph load_graph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open graph file: " + path);
    return pacc::read_graph(is);
}

std::string output_dir_override(std::string dir) {
    if (const char* env = std::getenv("PACC_OUTPUT_DIR")) dir = env;
    return dir;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"preferential attachment clique complex laboratory"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a preferential attachment graph");
    int gen_T = 2000, gen_m = 7;
    double gen_delta = -5.0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--T", gen_T, "number of nodes");
    gen->add_option("--m", gen_m, "edges per node");
    gen->add_option("--delta", gen_delta, "attachment offset (> -m)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    // betti
    auto* bet = app.add_subcommand("betti", "Betti numbers of a graph file's clique complex");
    std::string bet_in;
    int bet_q = 2;
    bool bet_all = false;
    bet->add_option("-i,--input", bet_in, "pa-graph file")->required();
    bet->add_option("--q", bet_q, "dimension");
    bet->add_flag("--all", bet_all, "print all dimensions 0..q");

    // trace
    auto* tr = app.add_subcommand("trace", "per-node estimator trace (CSV)");
    std::string tr_in, tr_out;
    int tr_q = 2, tr_cpd = 20, tr_probe = 20, tr_exact_cap = 2000;
    std::string tr_mode = "both";
    tr->add_option("-i,--input", tr_in, "pa-graph file")->required();
    tr->add_option("--q", tr_q, "dimension");
    tr->add_option("--checkpoints-per-decade", tr_cpd, "Betti checkpoint density");
    tr->add_option("--probe-prefix", tr_probe, "prefix probed for the anchor sphere");
    tr->add_option("--exact-cap", tr_exact_cap, "largest T for exact estimators");
    tr->add_option("--mode", tr_mode, "exact | hatted | both");
    tr->add_option("-o,--output", tr_out, "output CSV (default stdout)");

    // ensemble
    auto* ens = app.add_subcommand("ensemble", "run a seeded replicate ensemble");
    std::string ens_config;
    ens->add_option("-c,--config", ens_config, "JSON config file");
    std::optional<int> ens_T, ens_m, ens_q, ens_reps, ens_threads, ens_cpd;
    std::optional<std::string> ens_delta, ens_mode, ens_outdir;
    std::optional<std::uint64_t> ens_seed;
    ens->add_option("--T", ens_T, "number of nodes");
    ens->add_option("--m", ens_m, "edges per node");
    ens->add_option("--delta", ens_delta, "attachment offset");
    ens->add_option("--q", ens_q, "dimension");
    ens->add_option("--replicates", ens_reps, "replicate count");
    ens->add_option("--seed", ens_seed, "master seed");
    ens->add_option("--mode", ens_mode, "exact | hatted | both");
    ens->add_option("--threads", ens_threads, "thread budget (0 = hardware)");
    ens->add_option("--checkpoints-per-decade", ens_cpd, "Betti checkpoint density");
    ens->add_option("--output-dir", ens_outdir, "output directory");

    // predict
    auto* pre = app.add_subcommand("predict", "closed-form growth prediction (JSON)");
    int pre_q = 2, pre_m = 7;
    std::string pre_delta = "-5";
    pre->add_option("--q", pre_q, "dimension");
    pre->add_option("--m", pre_m, "edges per node");
    pre->add_option("--delta", pre_delta, "attachment offset (rational or decimal)");

    // census
    auto* cen = app.add_subcommand("census", "count a pattern in graph files");
    std::string cen_pattern;
    std::vector<std::string> cen_inputs;
    std::string cen_delta = "-5";
    int cen_m = 7;
    bool cen_fit = false;
    cen->add_option("-p,--pattern", cen_pattern, "pattern file")->required();
    cen->add_option("-i,--input", cen_inputs, "pa-graph files")->required();
    cen->add_flag("--fit", cen_fit, "fit a log-log slope across the inputs");
    cen->add_option("--delta", cen_delta, "offset for the theoretical exponent");
    cen->add_option("--m", cen_m, "m for the theoretical exponent");

    // report
    auto* rep = app.add_subcommand("report", "emit plot data from a summary CSV");
    std::string rep_summary, rep_out = "out";
    bool rep_no_svg = false;
    rep->add_option("-s,--summary", rep_summary, "summary.csv from ensemble")->required();
    rep->add_option("--output-dir", rep_out, "output directory");
    rep->add_flag("--no-svg", rep_no_svg, "skip the SVG chart");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            pacc::MultiDiGraph g = pacc::generate({gen_T, gen_m, gen_delta, gen_seed});
            if (gen_out.empty()) {
                pacc::write_graph(std::cout, g);
            } else {
                std::ofstream os(gen_out);
                if (!os) throw std::runtime_error("cannot open output file: " + gen_out);
                pacc::write_graph(os, g);
            }
        } else if (*bet) {
            pacc::SimpleGraph g = pacc::simplify(load_graph(bet_in));
            pacc::SimplicialComplex x = pacc::clique_complex(g, bet_q + 1);
            if (bet_all)
                for (int q = 0; q <= bet_q; ++q)
                    std::cout << "beta_" << q << " " << pacc::betti(x, q) << '\n';
            else
                std::cout << "beta_" << bet_q << " " << pacc::betti(x, bet_q) << '\n';
        } else if (*tr) {
            pacc::SimpleGraph g = pacc::simplify(load_graph(tr_in));
            pacc::TraceOptions opts;
            opts.q = tr_q;
            opts.checkpoints = pacc::geometric_checkpoints(g.num_nodes, tr_cpd);
            opts.probe_prefix = tr_probe;
            opts.exact_cap = tr_exact_cap;
            pacc::EstimatorMode mode = pacc::parse_mode(tr_mode);
            opts.compute_exact = mode != pacc::EstimatorMode::Hatted;
            opts.compute_hatted = mode != pacc::EstimatorMode::Exact;
            pacc::LinkTrace trace = pacc::compute_trace(g, opts);
            if (tr_out.empty()) {
                pacc::write_trace_csv(std::cout, trace);
            } else {
                std::ofstream os(tr_out);
                if (!os) throw std::runtime_error("cannot open output file: " + tr_out);
                pacc::write_trace_csv(os, trace);
            }
        } else if (*ens) {
            pacc::ExperimentConfig cfg;
            if (!ens_config.empty()) {
                std::ifstream is(ens_config);
                if (!is) throw std::runtime_error("cannot open config: " + ens_config);
                nlohmann::json j;
                is >> j;
                cfg = pacc::config_from_json(j);
            }
            if (ens_T) cfg.T = *ens_T;
            if (ens_m) cfg.m = *ens_m;
            if (ens_delta) cfg.delta = *ens_delta;
            if (ens_q) cfg.q = *ens_q;
            if (ens_reps) cfg.replicates = *ens_reps;
            if (ens_seed) cfg.master_seed = *ens_seed;
            if (ens_mode) cfg.mode = pacc::parse_mode(*ens_mode);
            if (ens_threads) cfg.threads = *ens_threads;
            if (ens_cpd) cfg.checkpoints_per_decade = *ens_cpd;
            if (ens_outdir) cfg.output_dir = *ens_outdir;
            cfg.output_dir = output_dir_override(cfg.output_dir);

            pacc::EnsembleSummary summary = pacc::run_ensemble(cfg);
            std::filesystem::create_directories(cfg.output_dir);
            std::ofstream os(std::filesystem::path(cfg.output_dir) / "summary.csv");
            pacc::write_summary_csv(os, summary);
            std::cout << "wrote " << cfg.output_dir << "/summary.csv and "
                      << cfg.replicates << " trace files\n";
        } else if (*pre) {
            pacc::Rat delta = pacc::parse_rational(pre_delta);
            pacc::GrowthPrediction g = pacc::regime(pre_q, delta, pre_m);
            nlohmann::json j;
            j["q"] = pre_q;
            j["delta"] = pre_delta;
            j["m"] = pre_m;
            {
                std::ostringstream os;
                os << pacc::chi(delta, pre_m);
                j["chi"] = os.str();
            }
            {
                std::ostringstream os;
                os << g.exponent;
                j["exponent"] = os.str();
            }
            j["exponent_value"] = pacc::to_double(g.exponent);
            j["regime"] = pacc::regime_name(g.regime);
            if (pre_q >= 2) {
                std::ostringstream os;
                os << pacc::phase_threshold(pre_q);
                j["threshold"] = os.str();
            }
            std::cout << j.dump(2) << '\n';
        } else if (*cen) {
            std::ifstream ps(cen_pattern);
            if (!ps) throw std::runtime_error("cannot open pattern: " + cen_pattern);
            pacc::PatternGraph pattern = pacc::read_pattern(ps);
            std::vector<std::pair<double, double>> series;
            for (auto& path : cen_inputs) {
                pacc::MultiDiGraph g = load_graph(path);
                long long c = pacc::count_pattern(g, pattern);
                series.push_back({double(g.num_nodes), double(c)});
                std::cout << path << " T=" << g.num_nodes << " count=" << c << '\n';
            }
            if (cen_fit) {
                pacc::ExponentFit fit = pacc::fit_exponent(series);
                pacc::CountSequence cs =
                    pacc::count_sequence(pattern, pacc::parse_rational(cen_delta), cen_m);
                std::cout << "fitted_slope " << fit.slope << " r2 " << fit.r2 << '\n';
                std::cout << "predicted_A " << cs.A << " log_power " << cs.r << '\n';
            }
        } else if (*rep) {
            std::ifstream is(rep_summary);
            if (!is) throw std::runtime_error("cannot open summary: " + rep_summary);
            pacc::EnsembleSummary summary = pacc::read_summary_csv(is);
            std::string out = output_dir_override(rep_out);
            pacc::report(summary, out, !rep_no_svg);
            std::cout << "wrote plot data to " << out << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
