// Command line driver: construct QPP LDPC codes, analyze their structure,
// bound their minimum distance, and run channel simulations.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qppldpc/code_spec.hpp"
#include "qppldpc/decoder.hpp"
#include "qppldpc/distance.hpp"
#include "qppldpc/gf2.hpp"
#include "qppldpc/montecarlo.hpp"
#include "qppldpc/nncs.hpp"
#include "qppldpc/qpp.hpp"
#include "qppldpc/search.hpp"
#include "qppldpc/tanner.hpp"

using nlohmann::json;
using namespace qppldpc;

namespace {

struct LoadedCode {
    CodeSpec spec;
    CodeProfile profile;
    Qpp f;
    TannerGraph graph;
};

LoadedCode load_code(const std::string& path) {
    CodeSpec spec = load_code_spec(path);
    CodeProfile profile = spec.profile();
    Qpp f = spec.qpp();
    TannerGraph graph(profile, f);
    return {std::move(spec), profile, std::move(f), std::move(graph)};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path + "'");
    os << text;
}

json weight_matrix_json(const WeightMatrix& a) {
    json rows = json::array();
    for (const auto& row : a.w) rows.push_back(row);
    return rows;
}

WeightMatrix weight_matrix_from_json(const json& j) {
    WeightMatrix a;
    for (const auto& row : j) {
        a.w.push_back(row.get<std::vector<int>>());
        if (a.w.back().size() != a.w.front().size())
            throw std::invalid_argument("weights file: field 'weight_matrix' rows differ in length");
    }
    a.rows = static_cast<std::int64_t>(a.w.size());
    a.cols = a.rows ? static_cast<std::int64_t>(a.w.front().size()) : 0;
    return a;
}

int cmd_construct(const std::string& spec_path, const std::string& alist_path, int threads) {
    LoadedCode code = load_code(spec_path);
    if (code.graph.has_parallel_edges()) {
        std::cerr << "construct: graph has " << code.graph.parallel_edges().size()
                  << " parallel variable/check pairs; refusing to emit a parity check matrix\n";
        return 1;
    }
    const SparseBitMatrix h = code.graph.to_parity_check();
    const AutomorphismParams params = automorphism_params(code.f, code.profile);
    GirthOptions gopts;
    gopts.threads = threads;
    const GirthResult g = girth(code.graph, params, gopts);
    const std::int64_t rank = rank_gf2(h);
    if (!alist_path.empty()) write_text(alist_path, to_alist(h));
    std::cout << "name: " << code.spec.name << "\n"
              << "n: " << code.profile.n << "  r: " << code.profile.r << "  N: " << code.profile.edges
              << "\n"
              << "girth: " << (g.truncated ? std::string(">") + std::to_string(gopts.depth_cap)
                                           : std::to_string(g.girth))
              << "\n"
              << "beta: " << params.beta << "  gamma: " << params.gamma << "\n"
              << "rank: " << rank << "  k: " << code.profile.n - rank << "\n";
    return 0;
}

int cmd_girth(const std::string& spec_path, bool exhaustive, int depth_cap, int threads) {
    LoadedCode code = load_code(spec_path);
    const AutomorphismParams params = automorphism_params(code.f, code.profile);
    GirthOptions gopts;
    gopts.exhaustive = exhaustive;
    gopts.depth_cap = depth_cap;
    gopts.threads = threads;
    const GirthResult g = girth(code.graph, params, gopts);
    if (g.truncated)
        std::cout << "girth > " << depth_cap << "\n";
    else
        std::cout << "girth " << g.girth << " (attaining variable nodes: " << g.attaining_nodes
                  << ")\n";
    return 0;
}

int cmd_qc(const std::string& spec_path, const std::string& weights_path) {
    LoadedCode code = load_code(spec_path);
    const SparseBitMatrix h = code.graph.to_parity_check();
    const AutomorphismParams params = automorphism_params(code.f, code.profile);
    const QcRearrangement qc = qc_rearrange(h, params.beta, params.gamma);
    const CirculantDecomposition dec =
        decompose_circulant(qc.matrix, params.gamma, params.beta);
    const WeightMatrix a = weight_matrix(dec);

    json out;
    out["name"] = code.spec.name;
    out["beta"] = params.beta;
    out["gamma"] = params.gamma;
    out["row_step"] = qc.row_step;
    out["block_size"] = dec.block_size;
    out["weight_matrix"] = weight_matrix_json(a);
    json blocks = json::array();
    for (const auto& row : dec.first_rows) {
        json jrow = json::array();
        for (const auto& fr : row) jrow.push_back(fr);
        blocks.push_back(jrow);
    }
    out["circulant_first_rows"] = blocks;
    write_text(weights_path, out.dump(2) + "\n");
    std::cout << "weight matrix " << a.rows << "x" << a.cols << " written to " << weights_path
              << "\n";
    return 0;
}

int cmd_dmin(const std::string& weights_path, bool recursive, std::int64_t max_sets,
             const std::string& out_path, int threads) {
    std::ifstream is(weights_path);
    if (!is) throw std::invalid_argument("dmin: cannot open '" + weights_path + "'");
    json j;
    is >> j;
    if (!j.contains("weight_matrix"))
        throw std::invalid_argument("dmin: missing field 'weight_matrix'");
    const WeightMatrix a = weight_matrix_from_json(j.at("weight_matrix"));

    DminOptions opts;
    opts.max_sets = max_sets;
    opts.threads = threads;
    const auto t0 = std::chrono::steady_clock::now();
    const BoundResult res = recursive ? dmin_recursive(a, opts) : dmin_upper_bound(a, opts);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json out;
    if (res.bound)
        out["bound"] = *res.bound;
    else
        out["bound"] = nullptr;
    out["S"] = res.columns;
    out["method"] = recursive ? "weight-matrix bound with zero-row recursion" : "weight-matrix bound";
    out["sets_examined"] = res.sets_examined;
    out["elapsed"] = elapsed;
    if (!out_path.empty()) write_text(out_path, out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_nncs(const std::string& spec_path, const std::string& mode, std::int64_t budget,
             std::uint64_t seed, int iters, double base_llr, double bias_llr, int stop_at,
             bool qc_seeds, const std::string& out_path, int threads) {
    LoadedCode code = load_code(spec_path);
    const SparseBitMatrix h = code.graph.to_parity_check();
    const AutomorphismParams params = automorphism_params(code.f, code.profile);

    NncsConfig cfg;
    cfg.mode = mode == "pair" ? NncsConfig::Mode::pair : NncsConfig::Mode::single;
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.decoder_iters = iters;
    cfg.base_llr = base_llr;
    cfg.bias_llr = bias_llr;
    cfg.threads = threads;
    if (stop_at > 0) cfg.stop_at_weight = stop_at;
    for (std::int64_t v = 0; v < params.beta; ++v) cfg.representatives.push_back(v);
    if (qc_seeds) {
        const QcRearrangement qc = qc_rearrange(h, params.beta, params.gamma);
        const CirculantDecomposition dec = decompose_circulant(qc.matrix, params.gamma, params.beta);
        cfg.seed_supports = cofactor_codewords(h, qc, dec);
    }

    const NncsResult res = nncs_search(h, cfg);
    json out;
    out["decodes"] = res.decodes;
    if (res.best_weight) {
        out["best_weight"] = *res.best_weight;
        out["best_support"] = res.best_support;
    } else {
        out["best_weight"] = nullptr;  // no upper bound obtained
    }
    json found = json::array();
    for (const auto& f : res.found)
        found.push_back({{"weight", f.weight}, {"support", f.support}});
    out["found"] = found;
    if (!out_path.empty()) write_text(out_path, out.dump(2) + "\n");
    if (res.best_weight)
        std::cout << "best nonzero codeword weight: " << *res.best_weight << " (decodes: "
                  << res.decodes << ")\n";
    else
        std::cout << "no upper bound obtained (decodes: " << res.decodes << ")\n";
    return 0;
}

int cmd_search(const std::string& profile_path, int girth_target, const std::string& out_path,
               bool extra_primes, int max_stages, const std::string& checkpoint, int threads) {
    std::ifstream is(profile_path);
    if (!is) throw std::invalid_argument("search: cannot open '" + profile_path + "'");
    json j;
    is >> j;
    for (const char* field : {"lambda", "rho", "n"}) {
        if (!j.contains(field))
            throw std::invalid_argument(std::string("search: profile missing field '") + field + "'");
    }
    const CodeProfile profile = CodeProfile::make(j.at("lambda").get<std::int64_t>(),
                                                  j.at("rho").get<std::int64_t>(),
                                                  j.at("n").get<std::int64_t>());

    SearchConfig cfg;
    cfg.girth_target = girth_target;
    cfg.extra_primes = extra_primes;
    cfg.max_stages = max_stages;
    cfg.checkpoint_path = checkpoint;
    cfg.threads = threads;
    const SearchReport report = search_codes(profile, cfg);

    json out;
    out["lambda"] = profile.lambda;
    out["rho"] = profile.rho;
    out["n"] = profile.n;
    out["N"] = profile.edges;
    out["girth_target"] = girth_target;
    out["best_girth"] = report.best_girth;
    out["best_truncated"] = report.best_truncated;
    out["examined"] = report.examined;
    out["skipped_isomorphic"] = report.skipped_isomorphic;
    out["rejected_parallel"] = report.rejected_parallel;
    out["f2_values"] = report.f2_values;
    if (report.best_rank) out["best_rank"] = *report.best_rank;
    json cands = json::array();
    for (const auto& c : report.candidates)
        cands.push_back({{"f1", c.f1},
                         {"f2", c.f2},
                         {"girth", c.girth},
                         {"truncated", c.truncated},
                         {"beta", c.beta},
                         {"short_cycles", c.short_cycles}});
    out["candidates"] = cands;
    if (!out_path.empty()) write_text(out_path, out.dump(2) + "\n");
    std::cout << "candidates: " << report.candidates.size() << ", best girth "
              << (report.best_truncated ? std::string(">") + std::to_string(cfg.depth_cap)
                                        : std::to_string(report.best_girth))
              << "\n";
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::vector<double>& ebno,
                 std::int64_t max_frames, std::int64_t stop_errors, int iters,
                 std::uint64_t seed, const std::string& out_csv, const std::string& nc_log,
                 int workers) {
    LoadedCode code = load_code(spec_path);
    const SparseBitMatrix h = code.graph.to_parity_check();
    const std::int64_t k = code.profile.n - rank_gf2(h);

    SimConfig cfg;
    cfg.ebno_db = ebno;
    cfg.rate = static_cast<double>(k) / static_cast<double>(code.profile.n);
    cfg.max_frames = max_frames;
    cfg.stop_frame_errors = stop_errors;
    cfg.max_iters = iters;
    cfg.seed = seed;
    cfg.workers = workers;

    const SimStats stats = simulate(h, cfg);

    std::ostringstream csv;
    csv << "ebno_db,frames,bit_errors,frame_errors,detected,undetected,ber,fer\n";
    for (const auto& p : stats.points) {
        csv << p.ebno_db << ',' << p.frames << ',' << p.bit_errors << ',' << p.frame_errors << ','
            << p.detected << ',' << p.undetected << ',' << p.ber(code.profile.n) << ',' << p.fer()
            << '\n';
    }
    if (!out_csv.empty())
        write_text(out_csv, csv.str());
    else
        std::cout << csv.str();

    if (!nc_log.empty()) {
        json log = json::array();
        for (const auto& nc : stats.near_codewords)
            log.push_back({{"ebno_db", nc.ebno_db}, {"frame_index", nc.frame}, {"w", nc.w}, {"s", nc.s}});
        write_text(nc_log, log.dump(2) + "\n");
    }
    for (const auto& p : stats.points) {
        std::cout << "Eb/N0 " << p.ebno_db << " dB: frames " << p.frames << ", FER " << p.fer()
                  << ", detected " << p.detected << ", undetected " << p.undetected
                  << (p.partial ? " (partial)" : "") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QPP LDPC code construction and analysis"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--workers", threads, "worker threads for parallel stages");

    std::string spec_path, alist_path, weights_path, out_path, profile_path, checkpoint, nc_log;
    bool exhaustive = false, recursive = false, extra_primes = false, qc_seeds = false;
    int depth_cap = 16, iters = 100, girth_target = 6, max_stages = 4, stop_at = 0;
    std::int64_t budget = 10000, max_sets = -1, max_frames = 1'000'000, stop_errors = 50;
    std::uint64_t seed = 1;
    double base_llr = 2.0, bias_llr = 250.0;
    std::string mode = "single";
    std::vector<double> ebno;

    auto* construct = app.add_subcommand("construct", "build a code and export its parity check matrix");
    construct->add_option("--spec", spec_path, "code spec JSON")->required();
    construct->add_option("--alist", alist_path, "output alist path");

    auto* girth_cmd = app.add_subcommand("girth", "compute the graph girth");
    girth_cmd->add_option("--spec", spec_path)->required();
    girth_cmd->add_flag("--exhaustive", exhaustive, "scan every variable node");
    girth_cmd->add_option("--depth-cap", depth_cap, "longest cycle searched");

    auto* qc = app.add_subcommand("qc", "quasi-cyclic rearrangement and weight matrix");
    qc->add_option("--spec", spec_path)->required();
    qc->add_option("--weights", weights_path, "output JSON")->required();

    auto* dmin = app.add_subcommand("dmin", "minimum distance upper bound from a weight matrix");
    dmin->add_option("--weights", weights_path, "weights JSON from the qc subcommand")->required();
    dmin->add_flag("--recursive", recursive, "refine zero-psi sets recursively");
    dmin->add_option("--max-sets", max_sets, "column set enumeration budget");
    dmin->add_option("--out", out_path, "output JSON");

    auto* nncs = app.add_subcommand("nncs", "biased-decoding search for low-weight codewords");
    nncs->add_option("--spec", spec_path)->required();
    nncs->add_option("--mode", mode, "single or pair")->check(CLI::IsMember({"single", "pair"}));
    nncs->add_option("--budget", budget, "decode budget");
    nncs->add_option("--seed", seed);
    nncs->add_option("--iters", iters, "decoder iterations per attempt");
    nncs->add_option("--base-llr", base_llr);
    nncs->add_option("--bias-llr", bias_llr);
    nncs->add_option("--stop-at", stop_at, "stop once a codeword of this weight is found");
    nncs->add_flag("--qc-seeds", qc_seeds, "bias circulant cofactor codeword supports first");
    nncs->add_option("--out", out_path, "output JSON");

    auto* search = app.add_subcommand("search", "coefficient search for a profile");
    search->add_option("--profile", profile_path, "profile JSON {lambda, rho, n}")->required();
    search->add_option("--girth-target", girth_target)->required();
    search->add_option("--out", out_path, "report JSON")->required();
    search->add_flag("--extra-primes", extra_primes, "multiply in primes not dividing N");
    search->add_option("--max-stages", max_stages);
    search->add_option("--checkpoint", checkpoint, "progress file for resuming");

    auto* simulate_cmd = app.add_subcommand("simulate", "BPSK/AWGN Monte Carlo");
    simulate_cmd->add_option("--spec", spec_path)->required();
    simulate_cmd->add_option("--ebno", ebno, "Eb/N0 points in dB")->required()->delimiter(',');
    simulate_cmd->add_option("--max-frames", max_frames);
    simulate_cmd->add_option("--stop-errors", stop_errors);
    simulate_cmd->add_option("--iters", iters);
    simulate_cmd->add_option("--seed", seed);
    simulate_cmd->add_option("--out", out_path, "CSV output");
    simulate_cmd->add_option("--nc-log", nc_log, "near-codeword JSON log");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) return cmd_construct(spec_path, alist_path, threads);
        if (girth_cmd->parsed()) return cmd_girth(spec_path, exhaustive, depth_cap, threads);
        if (qc->parsed()) return cmd_qc(spec_path, weights_path);
        if (dmin->parsed()) return cmd_dmin(weights_path, recursive, max_sets, out_path, threads);
        if (nncs->parsed())
            return cmd_nncs(spec_path, mode, budget, seed, iters, base_llr, bias_llr, stop_at,
                            qc_seeds, out_path, threads);
        if (search->parsed())
            return cmd_search(profile_path, girth_target, out_path, extra_primes, max_stages,
                              checkpoint, threads);
        if (simulate_cmd->parsed())
            return cmd_simulate(spec_path, ebno, max_frames, stop_errors, iters, seed, out_path,
                                nc_log, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
