#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qppldpc/tanner.hpp"

namespace qppldpc {

/// Coefficient search: start from the minimal admissible f2, sweep f1 over
/// the canonical range [1, 2*f2*lcm(lambda,rho)), then escalate f2 with more
/// prime factors while the best girth keeps improving.
struct SearchConfig {
    int girth_target = 6;
    int depth_cap = 16;  // girth search cap; larger girths report as truncated
    int max_stages = 4;  // f2 escalation stages after the initial one
    bool extra_primes = false;  // also multiply in small primes not dividing N
    bool stop_on_no_improvement = true;
    int threads = 1;
    std::size_t max_candidates = 1u << 20;
    std::string checkpoint_path;  // written after every completed f2 sweep
};

struct SearchCandidate {
    std::int64_t f1 = 0, f2 = 0;
    int girth = 0;
    bool truncated = false;       // girth exceeds the depth cap
    std::int64_t beta = 0;
    std::int64_t short_cycles = 0;  // girth-attaining variable nodes; fewer is better
};

struct SearchReport {
    CodeProfile profile;
    std::vector<SearchCandidate> candidates;  // ranked best-first
    int best_girth = 0;
    bool best_truncated = false;
    std::int64_t examined = 0;            // valid (f1, f2) pairs evaluated
    std::int64_t skipped_isomorphic = 0;  // valid f1 outside the canonical range
    std::int64_t rejected_parallel = 0;
    std::vector<std::int64_t> f2_values;  // every f2 swept, in order
    std::optional<std::int64_t> best_rank;  // parity-check rank of the top candidate
};

SearchReport search_codes(const CodeProfile& profile, const SearchConfig& config);

}  // namespace qppldpc
