#include "qppldpc/nncs.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <thread>

#include "qppldpc/decoder.hpp"

namespace qppldpc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct StartWorker {
    const SparseBitMatrix& h;
    const NncsConfig& cfg;
    const std::vector<std::vector<std::uint32_t>>& var_checks;
    BpDecoder decoder;
    std::vector<double> llr;
    std::int64_t decodes = 0;
    std::int64_t budget = 0;
    std::vector<NncsFound> found;

    StartWorker(const SparseBitMatrix& h_, const NncsConfig& c,
                const std::vector<std::vector<std::uint32_t>>& vc)
        : h(h_), cfg(c), var_checks(vc), decoder(h_), llr(static_cast<std::size_t>(h_.cols())) {}

    // Decodes with the given biased set; returns the support if a nonzero
    // codeword came out, nullopt otherwise.
    std::optional<std::vector<std::uint32_t>> attempt(const std::vector<std::uint32_t>& biased) {
        std::fill(llr.begin(), llr.end(), cfg.base_llr);
        for (auto p : biased) llr[p] = -cfg.bias_llr;
        const DecodeResult dec = decoder.decode(llr, cfg.decoder_iters, false, cfg.stall_window);
        ++decodes;
        if (!dec.converged) return std::nullopt;
        std::vector<std::uint32_t> support;
        for (std::size_t v = 0; v < dec.word.size(); ++v)
            if (dec.word[v]) support.push_back(static_cast<std::uint32_t>(v));
        if (support.empty()) return std::nullopt;
        if (syndrome_weight(h, dec.word) != 0)
            throw std::logic_error("nncs_search: converged word fails the parity check");
        return support;
    }

    // Selects a check with an odd number of biased neighbors; such a check
    // cannot be satisfied without flipping one more of its variables, and a
    // codeword whose support contains the biased set must pair it up through
    // exactly one of them. Preference goes to checks on the newest position.
    std::optional<std::uint32_t> unsatisfied_check(const std::vector<std::uint32_t>& biased) const {
        std::set<std::uint32_t> in_biased(biased.begin(), biased.end());
        auto odd_cover = [&](std::uint32_t c) {
            int cnt = 0;
            for (auto v : h.row(c)) cnt += in_biased.count(v) ? 1 : 0;
            return cnt % 2 == 1;
        };
        for (auto it = biased.rbegin(); it != biased.rend(); ++it) {
            for (auto c : var_checks[*it])
                if (odd_cover(c)) return c;
        }
        return std::nullopt;
    }

    void explore(const std::vector<std::uint32_t>& start) {
        std::set<std::vector<std::uint32_t>> visited;  // dedup on sorted copies
        std::vector<std::vector<std::uint32_t>> stack{start};  // insertion order kept
        while (!stack.empty() && decodes < budget) {
            std::vector<std::uint32_t> biased = std::move(stack.back());
            stack.pop_back();
            std::vector<std::uint32_t> key = biased;
            std::sort(key.begin(), key.end());
            if (!visited.insert(std::move(key)).second) continue;

            auto support = attempt(biased);
            if (support) {
                const int w = static_cast<int>(support->size());
                found.push_back({w, std::move(*support), decodes});
                if (cfg.stop_at_weight && w <= *cfg.stop_at_weight) return;
                continue;
            }
            if (static_cast<int>(biased.size()) >= cfg.max_biased) continue;

            const auto target = unsatisfied_check(biased);
            if (!target) continue;

            // Branch over the unbiased variables of that check, ranked by the
            // decoder's leaning toward bit 1.
            const auto& totals = decoder.last_totals();
            std::vector<std::uint32_t> candidates;
            for (auto v : h.row(*target))
                if (std::find(biased.begin(), biased.end(), v) == biased.end())
                    candidates.push_back(v);
            std::stable_sort(candidates.begin(), candidates.end(),
                             [&](std::uint32_t x, std::uint32_t y) { return totals[x] < totals[y]; });
            if (static_cast<int>(candidates.size()) > cfg.fanout)
                candidates.resize(static_cast<std::size_t>(cfg.fanout));
            // Push in reverse so the strongest candidate is explored first.
            for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
                std::vector<std::uint32_t> next = biased;
                next.push_back(*it);
                stack.push_back(std::move(next));
            }
        }
    }
};

}  // namespace

NncsResult nncs_search(const SparseBitMatrix& h, const NncsConfig& cfg) {
    if (cfg.budget < 1) throw std::invalid_argument("nncs_search: budget must be positive");
    const std::int64_t n = h.cols();
    const auto cols = h.col_lists();

    std::vector<std::int64_t> reps = cfg.representatives;
    if (reps.empty())
        for (std::int64_t v = 0; v < n; ++v) reps.push_back(v);
    for (auto v : reps)
        if (v < 0 || v >= n) throw std::invalid_argument("nncs_search: representative out of range");

    // Start sets.
    std::vector<std::vector<std::uint32_t>> starts;
    if (cfg.mode == NncsConfig::Mode::single) {
        for (auto v : reps) starts.push_back({static_cast<std::uint32_t>(v)});
    } else {
        for (auto v : reps) {
            for (std::int64_t j = v + 1; j < n; ++j)
                starts.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(j)});
        }
        if (static_cast<std::int64_t>(starts.size()) > cfg.budget) {
            // More pairs than decodes: take a seeded deterministic sample.
            std::sort(starts.begin(), starts.end(),
                      [&](const auto& a, const auto& b) {
                          const auto ka = splitmix64(cfg.seed ^ (std::uint64_t(a[0]) << 32 | a[1]));
                          const auto kb = splitmix64(cfg.seed ^ (std::uint64_t(b[0]) << 32 | b[1]));
                          return ka < kb;
                      });
            starts.resize(static_cast<std::size_t>(cfg.budget));
        }
    }
    if (starts.empty() && cfg.seed_supports.empty()) return {};

    const std::int64_t growth_budget =
        std::max<std::int64_t>(0, cfg.budget - static_cast<std::int64_t>(cfg.seed_supports.size()));
    const std::int64_t per_start =
        starts.empty() ? 0
                       : std::max<std::int64_t>(1, growth_budget / static_cast<std::int64_t>(starts.size()));

    const int threads = std::max(1, cfg.threads);
    std::vector<std::vector<NncsFound>> found_per_start(starts.size());
    std::vector<std::int64_t> decodes_per_start(starts.size(), 0);

    auto work = [&](int tid) {
        StartWorker worker(h, cfg, cols);
        bool satisfied = false;
        for (std::size_t i = static_cast<std::size_t>(tid); i < starts.size();
             i += static_cast<std::size_t>(threads)) {
            if (satisfied) break;  // a start already hit the requested weight
            worker.budget = per_start;
            worker.decodes = 0;
            worker.found.clear();
            worker.explore(starts[i]);
            if (cfg.stop_at_weight) {
                for (const auto& f : worker.found)
                    satisfied = satisfied || f.weight <= *cfg.stop_at_weight;
            }
            found_per_start[i] = std::move(worker.found);
            decodes_per_start[i] = worker.decodes;
        }
    };
    auto run_starts = [&]() {
        if (threads == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int tid = 0; tid < threads; ++tid) pool.emplace_back(work, tid);
            for (auto& th : pool) th.join();
        }
    };

    NncsResult res;
    auto reduce_best = [&res]() {
        for (const auto& f : res.found) {
            if (!res.best_weight || f.weight < *res.best_weight ||
                (f.weight == *res.best_weight && f.support < res.best_support)) {
                res.best_weight = f.weight;
                res.best_support = f.support;
            }
        }
    };

    if (!cfg.seed_supports.empty()) {
        StartWorker seed_worker(h, cfg, cols);
        seed_worker.budget = static_cast<std::int64_t>(cfg.seed_supports.size());
        for (const auto& seed : cfg.seed_supports) {
            if (seed_worker.decodes >= cfg.budget) break;
            auto support = seed_worker.attempt(seed);
            if (support)
                seed_worker.found.push_back(
                    {static_cast<int>(support->size()), std::move(*support), seed_worker.decodes});
        }
        res.decodes += seed_worker.decodes;
        for (auto& f : seed_worker.found) res.found.push_back(std::move(f));
        reduce_best();
        if (cfg.stop_at_weight && res.best_weight && *res.best_weight <= *cfg.stop_at_weight)
            return res;  // the positional starts have nothing left to prove
    }

    run_starts();
    for (std::size_t i = 0; i < starts.size(); ++i) {
        res.decodes += decodes_per_start[i];
        for (auto& f : found_per_start[i]) res.found.push_back(std::move(f));
    }
    reduce_best();
    return res;
}

}  // namespace qppldpc
