#include "qppldpc/search.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>

#include <json.hpp>

namespace qppldpc {

namespace {

using nlohmann::json;

int rank_value(const SearchCandidate& c, int depth_cap) {
    return c.truncated ? depth_cap + 2 : c.girth;  // "girth > cap" outranks any measured girth
}

bool better(const SearchCandidate& a, const SearchCandidate& b, int depth_cap) {
    const int ga = rank_value(a, depth_cap), gb = rank_value(b, depth_cap);
    if (ga != gb) return ga > gb;
    if (a.short_cycles != b.short_cycles) return a.short_cycles < b.short_cycles;
    if (a.f2 != b.f2) return a.f2 < b.f2;
    return a.f1 < b.f1;
}

// f2 values for escalation stage k: the minimal f2 times every product of k
// primes drawn (with repetition) from the pool.
std::vector<std::int64_t> stage_f2_values(std::int64_t base, const std::vector<std::int64_t>& pool,
                                          int stage, std::int64_t n_edges) {
    std::set<std::int64_t> values;
    std::vector<std::int64_t> current{1};
    for (int k = 0; k < stage; ++k) {
        std::vector<std::int64_t> next;
        for (auto v : current)
            for (auto p : pool) {
                const std::int64_t prod = v * p;
                if (base * prod < n_edges) next.push_back(prod);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = std::move(next);
    }
    for (auto v : current) values.insert(base * v);
    return {values.begin(), values.end()};
}

struct SweepOutcome {
    std::vector<SearchCandidate> candidates;
    std::int64_t examined = 0;
    std::int64_t rejected_parallel = 0;
    std::int64_t skipped = 0;
    int best_girth = 0;
    bool best_truncated = false;
};

SweepOutcome sweep_f2(const CodeProfile& profile, std::int64_t f2, const SearchConfig& cfg) {
    const std::int64_t N = profile.edges;
    const std::int64_t range = std::min<std::int64_t>(canonical_f1_range(f2, profile.lambda, profile.rho), N);

    SweepOutcome out;
    const int threads = std::max(1, cfg.threads);
    std::vector<SweepOutcome> partial(static_cast<std::size_t>(threads));

    auto work = [&](int tid) {
        auto& mine = partial[static_cast<std::size_t>(tid)];
        for (std::int64_t f1 = 1 + tid; f1 < range; f1 += threads) {
            if (!is_permutation_poly(N, f1, f2)) continue;
            ++mine.examined;
            const Qpp f(N, f1, f2);
            const TannerGraph graph(profile, f);
            if (graph.has_parallel_edges()) {
                ++mine.rejected_parallel;
                continue;
            }
            const AutomorphismParams params = automorphism_params(f, profile);
            GirthOptions gopts;
            gopts.depth_cap = cfg.depth_cap;
            const GirthResult g = girth(graph, params, gopts);
            SearchCandidate cand;
            cand.f1 = f1;
            cand.f2 = f2;
            cand.girth = g.truncated ? cfg.depth_cap : g.girth;
            cand.truncated = g.truncated;
            cand.beta = params.beta;
            cand.short_cycles = g.attaining_nodes;
            mine.candidates.push_back(cand);
        }
        // Isomorphism savings: valid f1 beyond the canonical range.
        for (std::int64_t f1 = range + tid; f1 < N; f1 += threads)
            if (is_permutation_poly(N, f1, f2)) ++mine.skipped;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
        for (auto& th : pool) th.join();
    }

    for (auto& p : partial) {
        out.examined += p.examined;
        out.rejected_parallel += p.rejected_parallel;
        out.skipped += p.skipped;
        out.candidates.insert(out.candidates.end(), p.candidates.begin(), p.candidates.end());
    }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const SearchCandidate& a, const SearchCandidate& b) { return a.f1 < b.f1; });
    int best = 0;
    for (const auto& c : out.candidates) best = std::max(best, rank_value(c, cfg.depth_cap));
    out.best_truncated = best > cfg.depth_cap;
    out.best_girth = out.best_truncated ? cfg.depth_cap : best;
    return out;
}

json candidates_to_json(const std::vector<SearchCandidate>& cands) {
    json arr = json::array();
    for (const auto& c : cands)
        arr.push_back({{"f1", c.f1},
                       {"f2", c.f2},
                       {"girth", c.girth},
                       {"truncated", c.truncated},
                       {"beta", c.beta},
                       {"short_cycles", c.short_cycles}});
    return arr;
}

std::vector<SearchCandidate> candidates_from_json(const json& arr) {
    std::vector<SearchCandidate> cands;
    for (const auto& j : arr) {
        SearchCandidate c;
        c.f1 = j.at("f1").get<std::int64_t>();
        c.f2 = j.at("f2").get<std::int64_t>();
        c.girth = j.at("girth").get<int>();
        c.truncated = j.at("truncated").get<bool>();
        c.beta = j.at("beta").get<std::int64_t>();
        c.short_cycles = j.at("short_cycles").get<std::int64_t>();
        cands.push_back(c);
    }
    return cands;
}

struct Checkpoint {
    int stage = 0;
    std::size_t f2_index = 0;  // sweeps completed within the stage
    bool valid = false;
};

void write_checkpoint(const std::string& path, const CodeProfile& profile, int stage,
                      std::size_t f2_index, const SearchReport& report) {
    if (path.empty()) return;
    json j;
    j["lambda"] = profile.lambda;
    j["rho"] = profile.rho;
    j["n"] = profile.n;
    j["stage"] = stage;
    j["f2_index"] = f2_index;
    j["examined"] = report.examined;
    j["skipped_isomorphic"] = report.skipped_isomorphic;
    j["rejected_parallel"] = report.rejected_parallel;
    j["f2_values"] = report.f2_values;
    j["candidates"] = candidates_to_json(report.candidates);
    std::ofstream os(path);
    os << j.dump(2) << '\n';
}

Checkpoint read_checkpoint(const std::string& path, const CodeProfile& profile,
                           SearchReport& report) {
    Checkpoint cp;
    if (path.empty()) return cp;
    std::ifstream is(path);
    if (!is) return cp;
    json j;
    try {
        is >> j;
        if (j.at("lambda") != profile.lambda || j.at("rho") != profile.rho ||
            j.at("n") != profile.n)
            return cp;
        cp.stage = j.at("stage").get<int>();
        cp.f2_index = j.at("f2_index").get<std::size_t>();
        report.examined = j.at("examined").get<std::int64_t>();
        report.skipped_isomorphic = j.at("skipped_isomorphic").get<std::int64_t>();
        report.rejected_parallel = j.at("rejected_parallel").get<std::int64_t>();
        report.f2_values = j.at("f2_values").get<std::vector<std::int64_t>>();
        report.candidates = candidates_from_json(j.at("candidates"));
        cp.valid = true;
    } catch (const json::exception&) {
        return Checkpoint{};
    }
    return cp;
}

}  // namespace

SearchReport search_codes(const CodeProfile& profile, const SearchConfig& cfg) {
    profile.validate();
    const std::int64_t N = profile.edges;

    SearchReport report;
    report.profile = profile;

    const std::int64_t base_f2 = min_f2(N);
    std::vector<std::int64_t> pool;
    for (const auto& [p, e] : factorize(N)) pool.push_back(p);
    if (cfg.extra_primes) {
        for (std::int64_t p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
            if (N % p) pool.push_back(p);
        }
        std::sort(pool.begin(), pool.end());
    }

    const Checkpoint resume = read_checkpoint(cfg.checkpoint_path, profile, report);

    int best_rankv = 0;
    if (resume.valid) {
        for (const auto& c : report.candidates)
            best_rankv = std::max(best_rankv, rank_value(c, cfg.depth_cap));
    }
    for (int stage = 0; stage <= cfg.max_stages; ++stage) {
        if (resume.valid && stage < resume.stage) continue;
        const auto f2_values = stage_f2_values(base_f2, pool, stage, N);
        if (f2_values.empty()) break;

        int stage_best = 0;
        for (std::size_t i = 0; i < f2_values.size(); ++i) {
            if (resume.valid && stage == resume.stage && i < resume.f2_index) continue;
            const std::int64_t f2 = f2_values[i];
            const SweepOutcome sweep = sweep_f2(profile, f2, cfg);
            report.examined += sweep.examined;
            report.rejected_parallel += sweep.rejected_parallel;
            report.skipped_isomorphic += sweep.skipped;
            report.f2_values.push_back(f2);
            report.candidates.insert(report.candidates.end(), sweep.candidates.begin(),
                                     sweep.candidates.end());
            const int sweep_rank = sweep.best_truncated ? cfg.depth_cap + 2 : sweep.best_girth;
            stage_best = std::max(stage_best, sweep_rank);
            write_checkpoint(cfg.checkpoint_path, profile, stage, i + 1, report);
        }

        const bool improved = stage_best > best_rankv;
        best_rankv = std::max(best_rankv, stage_best);
        if (stage > 0 && !improved && cfg.stop_on_no_improvement) break;
    }

    // Only candidates meeting the target girth are reported; an empty list is
    // the legal "unattainable" outcome. best_girth still reflects what was seen.
    report.best_girth = best_rankv > cfg.depth_cap ? cfg.depth_cap : best_rankv;
    report.best_truncated = best_rankv > cfg.depth_cap;
    std::vector<SearchCandidate> kept;
    for (const auto& c : report.candidates)
        if (rank_value(c, cfg.depth_cap) >= cfg.girth_target) kept.push_back(c);
    std::sort(kept.begin(), kept.end(), [&](const SearchCandidate& a, const SearchCandidate& b) {
        return better(a, b, cfg.depth_cap);
    });
    if (kept.size() > cfg.max_candidates) kept.resize(cfg.max_candidates);
    report.candidates = std::move(kept);

    if (!report.candidates.empty()) {
        const auto& top = report.candidates.front();
        const Qpp f(N, top.f1, top.f2);
        const TannerGraph graph(profile, f);
        report.best_rank = rank_gf2(graph.to_parity_check());
    }
    return report;
}

}  // namespace qppldpc
